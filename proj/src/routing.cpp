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

#include "rbpi/routing.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

namespace rbpi {
namespace {

bool canonical_less(const RouteEntry& a, const RouteEntry& b) {
  return std::tie(a.hop_count, a.next_hop, a.path) < std::tie(b.hop_count, b.next_hop, b.path);
}

bool path_contains(const std::vector<NodeId>& path, NodeId node) {
  return std::find(path.begin(), path.end(), node) != path.end();
}

// Routes `learner` can adopt from `advertiser` over an edge of bandwidth `bw`.
RoutingTable learn_from(const RoutingTable& learner, const RoutingTable& advertiser, Kilograms bw, SimTime now,
                        std::size_t max_per_neighbor) {
  RoutingTable out = learner;

  std::vector<RouteEntry> advertised;
  RouteEntry self;
  self.destination = advertiser.address();
  self.next_hop = advertiser.owner();
  self.hop_count = 0;
  self.path = {advertiser.owner()};
  self.free_capacity = kUnlimitedCapacity;
  advertised.push_back(std::move(self));
  for (const auto& [dest, list] : advertiser.candidates()) {
    for (const RouteEntry& e : list) {
      if (e.reachable() && !e.path.empty()) advertised.push_back(e);
    }
  }

  std::map<Address, std::vector<RouteEntry>> learned;
  for (const RouteEntry& e : advertised) {
    if (address_domain(e.destination) == learner.domain()) continue;
    if (e.destination == learner.address()) continue;
    if (path_contains(e.path, learner.owner())) continue;  // loop prevention
    const int hops = e.hop_count + 1;
    if (hops >= kUnreachableHops) continue;
    RouteEntry r;
    r.destination = e.destination;
    r.next_hop = advertiser.owner();
    r.hop_count = static_cast<std::uint8_t>(hops);
    r.path.reserve(e.path.size() + 1);
    r.path.push_back(learner.owner());
    r.path.insert(r.path.end(), e.path.begin(), e.path.end());
    r.downstream_capacity = e.free_capacity;
    r.free_capacity = std::min(e.free_capacity, bw);
    r.updated_at = now;
    r.source = RouteSource::kLearned;
    learned[r.destination].push_back(std::move(r));
  }

  // Withdraw everything previously learned through this advertiser.
  std::set<Address> touched;
  for (const auto& [dest, list] : out.candidates()) {
    for (const RouteEntry& e : list) {
      if (e.source == RouteSource::kLearned && e.next_hop == advertiser.owner()) touched.insert(dest);
    }
  }
  for (const auto& [dest, list] : learned) touched.insert(dest);

  for (Address dest : touched) {
    std::vector<RouteEntry> merged;
    for (const RouteEntry& e : out.candidates_for(dest)) {
      if (!(e.source == RouteSource::kLearned && e.next_hop == advertiser.owner())) merged.push_back(e);
    }
    if (auto it = learned.find(dest); it != learned.end()) {
      std::vector<RouteEntry> fresh = std::move(it->second);
      std::sort(fresh.begin(), fresh.end(), canonical_less);
      fresh.erase(std::unique(fresh.begin(), fresh.end(),
                              [](const RouteEntry& x, const RouteEntry& y) { return x.path == y.path; }),
                  fresh.end());
      if (fresh.size() > max_per_neighbor) fresh.resize(max_per_neighbor);
      merged.insert(merged.end(), fresh.begin(), fresh.end());
    }
    out.set_candidates(dest, std::move(merged));
  }
  return out;
}

}  // namespace

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "rip") return Strategy::kRip;
  if (name == "ospf") return Strategy::kOspf;
  if (name == "bgp") return Strategy::kBgp;
  return std::nullopt;
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kRip:
      return "rip";
    case Strategy::kOspf:
      return "ospf";
    case Strategy::kBgp:
      return "bgp";
  }
  return "?";
}

const RouteEntry* RoutingTable::best(Address destination) const {
  auto it = best_.find(destination);
  return it == best_.end() ? nullptr : &it->second;
}

std::span<const RouteEntry> RoutingTable::candidates_for(Address destination) const {
  auto it = candidates_.find(destination);
  if (it == candidates_.end()) return {};
  return it->second;
}

void RoutingTable::set_candidates(Address destination, std::vector<RouteEntry> entries) {
  if (entries.empty()) {
    candidates_.erase(destination);
    best_.erase(destination);
    return;
  }
  candidates_[destination] = std::move(entries);
  refresh(destination);
}

void RoutingTable::refresh(Address destination) {
  auto& list = candidates_[destination];
  std::sort(list.begin(), list.end(), canonical_less);
  // Canonical order puts reachable entries first, so the front is the best.
  best_[destination] = list.front();
}

RoutingTable rip_step(const RoutingTable& table, std::span<const RoutingTable> neighbor_tables) {
  std::map<Address, std::vector<RouteEntry>> fresh;
  auto offer = [&](Address dest, NodeId via, int hops) {
    if (dest == table.address()) return;
    RouteEntry e;
    e.destination = dest;
    e.next_hop = via;
    e.hop_count = static_cast<std::uint8_t>(std::min(hops, static_cast<int>(kUnreachableHops)));
    e.source = RouteSource::kDistanceVector;
    // Keep whatever capacity knowledge the old entry via the same hop had.
    for (const RouteEntry& old : table.candidates_for(dest)) {
      if (old.next_hop == via) {
        e.free_capacity = old.free_capacity;
        e.updated_at = old.updated_at;
        break;
      }
    }
    fresh[dest].push_back(std::move(e));
  };

  for (const RoutingTable& nb : neighbor_tables) {
    offer(nb.address(), nb.owner(), 1);
    for (const auto& [dest, e] : nb.entries()) offer(dest, nb.owner(), e.hop_count + 1);
  }

  RoutingTable out(table.owner(), table.address());
  for (auto& [dest, list] : fresh) out.set_candidates(dest, std::move(list));
  return out;
}

std::map<NodeId, RoutingTable> ospf_recompute(const CarrierDomain& domain, const RoadGraph& graph) {
  const std::set<NodeId> members(domain.members.begin(), domain.members.end());
  std::map<NodeId, std::vector<std::pair<NodeId, std::int64_t>>> adj;
  for (const RoadEdge& e : graph.edges()) {
    if (members.count(e.from) && members.count(e.to) && e.from != e.to) {
      adj[e.from].push_back({e.to, SimTime::from_hours(travel_time(e)).ticks()});
    }
  }
  for (auto& [n, list] : adj) std::sort(list.begin(), list.end());

  std::map<NodeId, RoutingTable> tables;
  for (NodeId source : members) {
    const PiNode* src = graph.find_node(source);
    if (src == nullptr) continue;
    RoutingTable table(source, src->address);

    // Label = (total ticks, first hop); lexicographic order is preserved by
    // extension, so plain Dijkstra over these labels stays correct.
    using Label = std::pair<std::int64_t, NodeId>;
    std::map<NodeId, Label> label;
    std::map<NodeId, NodeId> pred;
    std::set<NodeId> done;
    std::priority_queue<std::tuple<std::int64_t, NodeId, NodeId>, std::vector<std::tuple<std::int64_t, NodeId, NodeId>>,
                        std::greater<>>
        pq;
    label[source] = {0, source};
    pq.push({0, source, source});
    while (!pq.empty()) {
      auto [d, first, u] = pq.top();
      pq.pop();
      if (done.count(u)) continue;
      if (label[u] != Label{d, first}) continue;
      done.insert(u);
      for (auto [v, w] : adj[u]) {
        if (done.count(v)) continue;
        Label cand{d + w, u == source ? v : first};
        auto it = label.find(v);
        if (it == label.end() || cand < it->second) {
          label[v] = cand;
          pred[v] = u;
          pq.push({cand.first, cand.second, v});
        }
      }
    }

    for (const auto& [v, lab] : label) {
      if (v == source) continue;
      RouteEntry e;
      e.destination = graph.node(v).address;
      e.next_hop = lab.second;
      for (NodeId at = v; at != source; at = pred[at]) e.path.push_back(at);
      e.path.push_back(source);
      std::reverse(e.path.begin(), e.path.end());
      e.hop_count = static_cast<std::uint8_t>(std::min<std::size_t>(e.path.size() - 1, kUnreachableHops));
      e.source = RouteSource::kIntraDomain;
      table.set_candidates(e.destination, {e});
    }
    tables.emplace(source, std::move(table));
  }
  return tables;
}

std::pair<RoutingTable, RoutingTable> bgp_exchange(const RoutingTable& a, const RoutingTable& b,
                                                   const LinkCapacity& link, SimTime now,
                                                   std::size_t max_per_neighbor) {
  if (!link.a_to_b && !link.b_to_a) {
    throw RoutingError("bgp_exchange: nodes " + std::to_string(a.owner()) + " and " + std::to_string(b.owner()) +
                       " are not adjacent");
  }
  // Both sides learn from the other's state before the exchange.
  RoutingTable new_a = link.a_to_b ? learn_from(a, b, *link.a_to_b, now, max_per_neighbor) : a;
  RoutingTable new_b = link.b_to_a ? learn_from(b, a, *link.b_to_a, now, max_per_neighbor) : b;
  return {std::move(new_a), std::move(new_b)};
}

Kilograms edge_bandwidth(std::span<const ScheduledDeparture> schedule, NodeId from, NodeId to, SimTime start,
                         SimTime end) {
  if (end < start) throw std::invalid_argument("edge_bandwidth: window end precedes start");
  Kilograms total = 0;
  for (const ScheduledDeparture& d : schedule) {
    if (d.from == from && d.to == to && d.time >= start && d.time <= end) {
      total += std::max<Kilograms>(0, d.capacity - d.load);
    }
  }
  return total;
}

RoutingTable apply_capacity_report(const RoutingTable& table, const CapacityReport& report) {
  RoutingTable out = table;
  if (!report.edge || report.edge->first != table.owner()) return out;
  const NodeId via = report.edge->second;
  out.update_candidates([&](RouteEntry& e) {
    if (e.next_hop != via || report.departure_time < e.updated_at) return;
    e.free_capacity = std::min(report.free_capacity, e.downstream_capacity);
    e.updated_at = report.departure_time;
  });
  return out;
}

std::optional<HopDecision> select_next_hop(const RoutingTable& table, const codec::PiDatagramHeader& header,
                                           Strategy strategy, std::span<const NodeId> pinned_path) {
  if (header.next_header == codec::kConnectionOriented && !pinned_path.empty()) {
    auto it = std::find(pinned_path.begin(), pinned_path.end(), table.owner());
    if (it != pinned_path.end() && std::next(it) != pinned_path.end()) {
      return HopDecision{*std::next(it), false, std::vector<NodeId>(pinned_path.begin(), pinned_path.end())};
    }
  }

  std::vector<const RouteEntry*> pool;
  for (const RouteEntry& e : table.candidates_for(header.destination)) {
    if (e.reachable()) pool.push_back(&e);
  }
  if (pool.empty()) return std::nullopt;

  bool shortfall = false;
  if (capacity_aware(strategy)) {
    std::vector<const RouteEntry*> feasible;
    for (const RouteEntry* e : pool) {
      if (e->free_capacity >= header.payload_length) feasible.push_back(e);
    }
    if (feasible.empty()) {
      shortfall = true;
    } else {
      pool = std::move(feasible);
    }
  }
  const RouteEntry* chosen =
      *std::min_element(pool.begin(), pool.end(), [](const RouteEntry* x, const RouteEntry* y) {
        return canonical_less(*x, *y);
      });
  return HopDecision{chosen->next_hop, shortfall, chosen->path};
}

}  // namespace rbpi
