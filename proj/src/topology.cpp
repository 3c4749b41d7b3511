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

#include "rbpi/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace rbpi {
namespace {

std::string edge_label(const RoadEdge& e) {
  std::ostringstream os;
  os << "edge " << e.from << "->" << e.to;
  return os.str();
}

}  // namespace

std::optional<Capability> capability_from_name(const std::string& name) {
  if (name == "printer_3d") return Capability::kPrinter3d;
  if (name == "refuel") return Capability::kRefuel;
  if (name == "container_power") return Capability::kContainerPower;
  return std::nullopt;
}

const char* capability_name(Capability c) {
  switch (c) {
    case Capability::kPrinter3d:
      return "printer_3d";
    case Capability::kRefuel:
      return "refuel";
    case Capability::kContainerPower:
      return "container_power";
  }
  return "?";
}

double travel_time(const RoadEdge& edge) { return edge.distance_km / edge.speed_kmh; }

RoadGraph::RoadGraph(std::vector<PiNode> nodes, std::vector<RoadEdge> edges,
                     std::vector<CarrierDomain> domains)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), domains_(std::move(domains)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    by_id_.try_emplace(nodes_[i].id, i);
    by_address_.try_emplace(nodes_[i].address, i);
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    by_endpoints_.try_emplace({edges_[i].from, edges_[i].to}, i);
  }
  domains_declared_ = !domains_.empty();
  if (!domains_declared_) {
    std::map<DomainId, std::vector<NodeId>> grouped;
    for (const PiNode& n : nodes_) grouped[n.domain].push_back(n.id);
    for (auto& [id, members] : grouped) {
      std::sort(members.begin(), members.end());
      domains_.push_back({id, std::move(members)});
    }
  }
}

const PiNode* RoadGraph::find_node(NodeId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &nodes_[it->second];
}

const PiNode* RoadGraph::find_by_address(Address address) const {
  auto it = by_address_.find(address);
  return it == by_address_.end() ? nullptr : &nodes_[it->second];
}

const PiNode& RoadGraph::node(NodeId id) const {
  const PiNode* n = find_node(id);
  if (n == nullptr) throw UnknownNode(id);
  return *n;
}

const RoadEdge* RoadGraph::find_edge(NodeId from, NodeId to) const {
  auto it = by_endpoints_.find({from, to});
  return it == by_endpoints_.end() ? nullptr : &edges_[it->second];
}

const CarrierDomain* RoadGraph::find_domain(DomainId id) const {
  for (const CarrierDomain& d : domains_) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

ValidationReport validate_graph(const RoadGraph& graph) {
  ValidationReport report;

  std::set<NodeId> ids;
  std::map<Address, NodeId> addresses;
  for (const PiNode& n : graph.nodes()) {
    const std::string label = "node " + std::to_string(n.id);
    if (!ids.insert(n.id).second) {
      report.add("E_NODE_DUPLICATE_ID", label + " declared more than once");
    }
    if (auto [it, inserted] = addresses.emplace(n.address, n.id); !inserted) {
      report.add("E_NODE_DUPLICATE_ADDRESS", label + " reuses address " + std::to_string(n.address) +
                                                 " of node " + std::to_string(it->second));
    }
    if (n.storage_capacity <= 0) {
      report.add("E_NODE_CAPACITY", label + " storage_capacity must be positive");
    }
    if (!(n.occupancy_threshold > 0.0 && n.occupancy_threshold <= 1.0)) {
      report.add("E_NODE_THRESHOLD", label + " occupancy_threshold must lie in (0, 1]");
    }
    if (address_domain(n.address) != n.domain) {
      report.add("E_ADDRESS_DOMAIN", label + " address domain part " + std::to_string(address_domain(n.address)) +
                                         " differs from its carrier domain " + std::to_string(n.domain));
    }
  }

  std::set<std::pair<NodeId, NodeId>> seen_edges;
  for (const RoadEdge& e : graph.edges()) {
    const std::string label = edge_label(e);
    const bool from_ok = ids.count(e.from) != 0;
    const bool to_ok = ids.count(e.to) != 0;
    if (!from_ok || !to_ok) {
      report.add("E_EDGE_DANGLING", label + " references missing node " + std::to_string(from_ok ? e.to : e.from));
      continue;
    }
    if (e.from == e.to) report.add("E_EDGE_SELF_LOOP", label + " is a self-loop");
    if (!(e.distance_km > 0)) report.add("E_EDGE_DISTANCE", label + " distance must be positive");
    if (!(e.speed_kmh > 0)) report.add("E_EDGE_SPEED", label + " speed must be positive");
    if (!seen_edges.insert({e.from, e.to}).second) {
      report.add("E_EDGE_DUPLICATE", label + " declared more than once");
    }
  }

  std::map<NodeId, DomainId> owner;
  std::set<DomainId> domain_ids;
  for (const CarrierDomain& d : graph.domains()) {
    const std::string label = "domain " + std::to_string(d.id);
    if (!domain_ids.insert(d.id).second) report.add("E_DOMAIN_DUPLICATE_ID", label + " declared more than once");
    for (NodeId m : d.members) {
      const PiNode* n = graph.find_node(m);
      if (n == nullptr) {
        report.add("E_DOMAIN_UNKNOWN_MEMBER", label + " lists missing node " + std::to_string(m));
        continue;
      }
      if (auto [it, inserted] = owner.emplace(m, d.id); !inserted) {
        report.add("E_DOMAIN_OVERLAP", "node " + std::to_string(m) + " belongs to domains " +
                                           std::to_string(it->second) + " and " + std::to_string(d.id));
        continue;
      }
      if (n->domain != d.id) {
        report.add("E_DOMAIN_MISMATCH", "node " + std::to_string(m) + " declares domain " +
                                            std::to_string(n->domain) + " but is listed in " + label);
      }
    }
  }
  for (NodeId id : ids) {
    if (owner.count(id) == 0) report.add("E_DOMAIN_UNASSIGNED", "node " + std::to_string(id) + " is in no domain");
  }

  // Weak connectivity via union-find over node indices.
  if (!ids.empty()) {
    std::vector<NodeId> order(ids.begin(), ids.end());
    std::map<NodeId, std::size_t> index;
    for (std::size_t i = 0; i < order.size(); ++i) index[order[i]] = i;
    std::vector<std::size_t> parent(order.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t components = order.size();
    for (const RoadEdge& e : graph.edges()) {
      auto a = index.find(e.from);
      auto b = index.find(e.to);
      if (a == index.end() || b == index.end()) continue;
      std::size_t ra = find(a->second), rb = find(b->second);
      if (ra != rb) {
        parent[ra] = rb;
        --components;
      }
    }
    if (components > 1) {
      report.warn("W_DISCONNECTED", "graph has " + std::to_string(components) + " weakly connected components");
    }
  }
  return report;
}

std::vector<Neighbor> neighbors(const RoadGraph& graph, NodeId node) {
  if (graph.find_node(node) == nullptr) throw UnknownNode(node);
  std::vector<Neighbor> out;
  for (const RoadEdge& e : graph.edges()) {
    if (e.from == node) out.push_back({&e, e.to});
  }
  std::stable_sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  return out;
}

}  // namespace rbpi
