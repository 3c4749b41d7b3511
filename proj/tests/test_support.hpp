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


#ifndef RBPI_TESTS_TEST_SUPPORT_HPP_
#define RBPI_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rbpi/routing.hpp"
#include "rbpi/topology.hpp"

namespace rbpi::testing {

inline PiNode make_node(NodeId id, DomainId domain = 1, Kilograms capacity = 10000, Capabilities caps = {}) {
  PiNode n;
  n.id = id;
  n.domain = domain;
  n.address = make_address(domain, static_cast<std::uint16_t>(id));
  n.storage_capacity = capacity;
  n.capabilities = caps;
  return n;
}

inline void add_road(std::vector<RoadEdge>& edges, NodeId a, NodeId b, double km = 100, double kmh = 100) {
  edges.push_back({a, b, km, kmh});
  edges.push_back({b, a, km, kmh});
}

// A path 0 - 1 - ... - (n-1) in one domain.
inline RoadGraph chain_graph(int n) {
  std::vector<PiNode> nodes;
  std::vector<RoadEdge> edges;
  for (int i = 0; i < n; ++i) nodes.push_back(make_node(static_cast<NodeId>(i)));
  for (int i = 0; i + 1 < n; ++i) add_road(edges, static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return RoadGraph(nodes, edges);
}

// Random connected graph with bidirectional roads: a random spanning tree
// plus extra chords.
inline RoadGraph random_connected_graph(std::mt19937_64& rng, int n, double chord_probability = 0.25) {
  std::vector<PiNode> nodes;
  std::vector<RoadEdge> edges;
  std::set<std::pair<NodeId, NodeId>> present;
  for (int i = 0; i < n; ++i) nodes.push_back(make_node(static_cast<NodeId>(i)));
  auto link = [&](NodeId a, NodeId b) {
    if (a == b || present.count({std::min(a, b), std::max(a, b)})) return;
    present.insert({std::min(a, b), std::max(a, b)});
    add_road(edges, a, b, 10.0 + static_cast<double>(rng() % 200), 50.0 + static_cast<double>(rng() % 50));
  };
  for (int i = 1; i < n; ++i) link(static_cast<NodeId>(i), static_cast<NodeId>(rng() % i));
  std::bernoulli_distribution chord(chord_probability);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (chord(rng)) link(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
  }
  return RoadGraph(nodes, edges);
}

// Hop distances from `source` along directed edges.
inline std::map<NodeId, int> bfs_hops(const RoadGraph& g, NodeId source) {
  std::map<NodeId, int> dist{{source, 0}};
  std::queue<NodeId> q;
  q.push(source);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (const RoadEdge& e : g.edges()) {
      if (e.from == u && !dist.count(e.to)) {
        dist[e.to] = dist[u] + 1;
        q.push(e.to);
      }
    }
  }
  return dist;
}

// Runs synchronous distance-vector sweeps until nothing changes.
inline std::map<NodeId, RoutingTable> converge_rip(const RoadGraph& g, int max_rounds = 64) {
  std::map<NodeId, RoutingTable> tables;
  for (const PiNode& n : g.nodes()) tables.emplace(n.id, RoutingTable(n.id, n.address));
  for (int round = 0; round < max_rounds; ++round) {
    std::map<NodeId, RoutingTable> next;
    for (const auto& [id, t] : tables) {
      std::vector<RoutingTable> nbs;
      for (const Neighbor& nb : neighbors(g, id)) nbs.push_back(tables.at(nb.node));
      next.emplace(id, rip_step(t, nbs));
    }
    if (next == tables) break;
    tables = std::move(next);
  }
  return tables;
}

}  // namespace rbpi::testing

#endif  // RBPI_TESTS_TEST_SUPPORT_HPP_
