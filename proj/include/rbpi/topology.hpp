// Copyright 2026 The RBPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RBPI_TOPOLOGY_HPP_
#define RBPI_TOPOLOGY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbpi {

using NodeId = std::uint32_t;
using DomainId = std::uint32_t;
using Address = std::uint32_t;
using MoverId = std::uint32_t;
using Kilograms = std::int64_t;

// Logical addresses split into a carrier-domain part (high 16 bits) and a
// local part (low 16 bits), so each carrier owns its own address space.
constexpr Address make_address(DomainId domain, std::uint16_t local) {
  return (static_cast<Address>(domain & 0xFFFF) << 16) | local;
}
constexpr DomainId address_domain(Address a) { return a >> 16; }
constexpr std::uint16_t address_local(Address a) { return static_cast<std::uint16_t>(a & 0xFFFF); }

enum class Capability : std::uint8_t {
  kPrinter3d = 1u << 0,
  kRefuel = 1u << 1,
  kContainerPower = 1u << 2,
};

class Capabilities {
 public:
  constexpr Capabilities() = default;
  constexpr Capabilities(std::initializer_list<Capability> caps) {
    for (Capability c : caps) set(c);
  }
  constexpr void set(Capability c) { bits_ |= static_cast<std::uint8_t>(c); }
  constexpr bool has(Capability c) const { return (bits_ & static_cast<std::uint8_t>(c)) != 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool operator==(const Capabilities&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

std::optional<Capability> capability_from_name(const std::string& name);
const char* capability_name(Capability c);

struct PiNode {
  NodeId id = 0;
  Address address = 0;
  Kilograms storage_capacity = 0;
  double occupancy_threshold = 0.8;
  Capabilities capabilities;
  DomainId domain = 0;

  bool has(Capability c) const { return capabilities.has(c); }
  bool operator==(const PiNode&) const = default;
};

struct RoadEdge {
  NodeId from = 0;
  NodeId to = 0;
  double distance_km = 0;
  double speed_kmh = 0;

  bool operator==(const RoadEdge&) const = default;
};

// Hours needed to drive the edge at its posted speed.
double travel_time(const RoadEdge& edge);

struct CarrierDomain {
  DomainId id = 0;
  std::vector<NodeId> members;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;

  bool ok() const { return violations.empty(); }
  void add(std::string code, std::string message) {
    violations.push_back({std::move(code), std::move(message)});
  }
  void warn(std::string code, std::string message) {
    warnings.push_back({std::move(code), std::move(message)});
  }
};

class UnknownNode : public std::out_of_range {
 public:
  explicit UnknownNode(NodeId id) : std::out_of_range("unknown node id " + std::to_string(id)) {}
};

// Immutable road network. Construction never throws on bad data;
// validate_graph() reports what is wrong with it.
class RoadGraph {
 public:
  RoadGraph() = default;
  // When `domains` is empty they are derived from PiNode::domain.
  RoadGraph(std::vector<PiNode> nodes, std::vector<RoadEdge> edges,
            std::vector<CarrierDomain> domains = {});

  const std::vector<PiNode>& nodes() const { return nodes_; }
  const std::vector<RoadEdge>& edges() const { return edges_; }
  const std::vector<CarrierDomain>& domains() const { return domains_; }
  bool domains_declared() const { return domains_declared_; }

  const PiNode* find_node(NodeId id) const;
  const PiNode* find_by_address(Address address) const;
  const PiNode& node(NodeId id) const;  // throws UnknownNode
  const RoadEdge* find_edge(NodeId from, NodeId to) const;
  const CarrierDomain* find_domain(DomainId id) const;

 private:
  std::vector<PiNode> nodes_;
  std::vector<RoadEdge> edges_;
  std::vector<CarrierDomain> domains_;
  bool domains_declared_ = false;
  std::map<NodeId, std::size_t> by_id_;
  std::map<Address, std::size_t> by_address_;
  std::map<std::pair<NodeId, NodeId>, std::size_t> by_endpoints_;
};

// Lists every invariant violation; an empty violation list means the graph is
// valid. Weak disconnection is reported as a warning.
ValidationReport validate_graph(const RoadGraph& graph);

struct Neighbor {
  const RoadEdge* edge;
  NodeId node;
};

// Outgoing neighbors in ascending destination id. Throws UnknownNode.
std::vector<Neighbor> neighbors(const RoadGraph& graph, NodeId node);

}  // namespace rbpi

#endif  // RBPI_TOPOLOGY_HPP_
