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

#ifndef RBPI_ROUTING_HPP_
#define RBPI_ROUTING_HPP_

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rbpi/codec.hpp"
#include "rbpi/sim_time.hpp"
#include "rbpi/topology.hpp"

namespace rbpi {

// Hop count meaning "unreachable" (distance-vector infinity).
inline constexpr std::uint8_t kUnreachableHops = 16;
// Capacity of a route that has no measured bottleneck.
inline constexpr Kilograms kUnlimitedCapacity = std::numeric_limits<Kilograms>::max() / 4;
// Capacity lookahead window used when summing scheduled free capacity.
inline constexpr double kDefaultCapacityWindowHours = 24.0;

enum class Strategy { kRip, kOspf, kBgp };

std::optional<Strategy> strategy_from_name(const std::string& name);
const char* strategy_name(Strategy s);
// OSPF and BGP analogs weigh free capacity; RIP counts hubs only.
constexpr bool capacity_aware(Strategy s) { return s != Strategy::kRip; }

enum class RouteSource : std::uint8_t {
  kDistanceVector,  // RIP analog
  kIntraDomain,     // OSPF analog shortest-path tree
  kLearned,         // BGP analog path vector
};

struct RouteEntry {
  Address destination = 0;
  NodeId next_hop = 0;
  std::uint8_t hop_count = kUnreachableHops;
  // Full node path starting at the table owner. Empty for distance-vector routes.
  std::vector<NodeId> path;
  Kilograms free_capacity = 0;
  // Capacity advertised by the next hop for the rest of the path.
  Kilograms downstream_capacity = kUnlimitedCapacity;
  SimTime updated_at;
  RouteSource source = RouteSource::kDistanceVector;

  bool reachable() const { return hop_count < kUnreachableHops; }
  bool operator==(const RouteEntry&) const = default;
};

class RoutingTable {
 public:
  RoutingTable() = default;
  RoutingTable(NodeId owner, Address address) : owner_(owner), address_(address) {}

  NodeId owner() const { return owner_; }
  Address address() const { return address_; }
  DomainId domain() const { return address_domain(address_); }

  // Best entry per destination.
  const std::map<Address, RouteEntry>& entries() const { return best_; }
  // Every known entry per destination, in canonical order.
  const std::map<Address, std::vector<RouteEntry>>& candidates() const { return candidates_; }

  const RouteEntry* best(Address destination) const;
  std::span<const RouteEntry> candidates_for(Address destination) const;

  // Replaces the candidate set for a destination and re-selects its best entry.
  void set_candidates(Address destination, std::vector<RouteEntry> entries);

  // Mutates every candidate in place, then re-selects best entries.
  template <class Fn>
  void update_candidates(Fn&& fn) {
    for (auto& [dest, list] : candidates_) {
      for (RouteEntry& e : list) fn(e);
    }
    for (auto& [dest, list] : candidates_) refresh(dest);
  }

  bool operator==(const RoutingTable&) const = default;

 private:
  void refresh(Address destination);

  NodeId owner_ = 0;
  Address address_ = 0;
  std::map<Address, RouteEntry> best_;
  std::map<Address, std::vector<RouteEntry>> candidates_;
};

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CapacityReport {
  MoverId mover = 0;
  // Next scheduled edge of the mover, if it has one.
  std::optional<std::pair<NodeId, NodeId>> edge;
  SimTime departure_time;
  Kilograms free_capacity = 0;

  bool operator==(const CapacityReport&) const = default;
};

struct ScheduledDeparture {
  MoverId mover = 0;
  NodeId from = 0;
  NodeId to = 0;
  SimTime time;
  Kilograms capacity = 0;
  Kilograms load = 0;
};

// One synchronous distance-vector sweep. `neighbor_tables` are the tables of
// the owner's out-neighbors; each neighbor also implicitly advertises itself.
RoutingTable rip_step(const RoutingTable& table, std::span<const RoutingTable> neighbor_tables);

// Shortest paths on travel time over intra-domain edges, one table per member.
// Ties on total time go to the lower next-hop id.
std::map<NodeId, RoutingTable> ospf_recompute(const CarrierDomain& domain, const RoadGraph& graph);

// Bandwidth of the connecting edges; nullopt when that direction has no road.
struct LinkCapacity {
  std::optional<Kilograms> a_to_b;
  std::optional<Kilograms> b_to_a;
};

inline constexpr std::size_t kMaxLearnedPerNeighbor = 4;

// Path-vector exchange between two adjacent tables. A side learns only routes
// to destinations outside its own carrier domain (inside it the intra-domain
// tree is authoritative). Throws RoutingError when neither direction exists.
std::pair<RoutingTable, RoutingTable> bgp_exchange(const RoutingTable& a, const RoutingTable& b,
                                                   const LinkCapacity& link, SimTime now = {},
                                                   std::size_t max_per_neighbor = kMaxLearnedPerNeighbor);

// Sum of free capacity of movers departing on the edge within [start, end].
Kilograms edge_bandwidth(std::span<const ScheduledDeparture> schedule, NodeId from, NodeId to, SimTime start,
                         SimTime end);

// Refreshes capacity of entries whose first hop is the reported edge. A report
// never overrides one with a later departure time.
RoutingTable apply_capacity_report(const RoutingTable& table, const CapacityReport& report);

struct HopDecision {
  NodeId next_hop = 0;
  // No candidate could carry the payload and the choice fell back to min hops.
  bool capacity_shortfall = false;
  // Path of the chosen entry, when known.
  std::vector<NodeId> path;
};

// Picks the next pi-node for a datagram. With a connection-oriented header and
// a pinned path through the owner, the pinned successor is returned.
std::optional<HopDecision> select_next_hop(const RoutingTable& table, const codec::PiDatagramHeader& header,
                                           Strategy strategy, std::span<const NodeId> pinned_path = {});

}  // namespace rbpi

#endif  // RBPI_ROUTING_HPP_
