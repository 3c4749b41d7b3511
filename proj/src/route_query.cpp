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

#include "rbpi/route_query.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace rbpi {

RoutingPlane::RoutingPlane(const RoadGraph& graph, Strategy strategy, SimTime window)
    : graph_(&graph), strategy_(strategy), window_(window) {
  for (const PiNode& n : graph.nodes()) tables_.emplace(n.id, RoutingTable(n.id, n.address));
  if (strategy_ == Strategy::kRip) return;
  for (const CarrierDomain& d : graph.domains()) {
    for (auto& [id, t] : ospf_recompute(d, graph)) tables_[id] = std::move(t);
  }
}

const RoutingTable& RoutingPlane::table(NodeId node) const {
  auto it = tables_.find(node);
  if (it == tables_.end()) throw UnknownNode(node);
  return it->second;
}

Kilograms RoutingPlane::bandwidth(std::span<const ScheduledDeparture> schedule, NodeId from, NodeId to,
                                  SimTime now) const {
  return edge_bandwidth(schedule, from, to, now, now + window_);
}

bool RoutingPlane::refresh_intra_capacity(std::span<const ScheduledDeparture> schedule, SimTime now) {
  bool changed = false;
  for (auto& [id, table] : tables_) {
    const NodeId owner = id;
    const RoutingTable before = table;
    table.update_candidates([&](RouteEntry& e) {
      if (e.source != RouteSource::kIntraDomain) return;
      e.free_capacity = bandwidth(schedule, owner, e.next_hop, now);
      e.updated_at = now;
    });
    changed |= !(before == table);
  }
  return changed;
}

bool RoutingPlane::exchange(std::span<const ScheduledDeparture> schedule, SimTime now) {
  bool changed = false;
  if (strategy_ == Strategy::kRip) {
    std::map<NodeId, RoutingTable> next;
    for (const auto& [id, table] : tables_) {
      std::vector<RoutingTable> nbs;
      for (const Neighbor& nb : neighbors(*graph_, id)) nbs.push_back(tables_.at(nb.node));
      next.emplace(id, rip_step(table, nbs));
    }
    changed = !(next == tables_);
    tables_ = std::move(next);
    return changed;
  }

  changed |= refresh_intra_capacity(schedule, now);
  if (strategy_ == Strategy::kOspf) return changed;

  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const RoadEdge& e : graph_->edges()) {
    if (e.from == e.to || !tables_.count(e.from) || !tables_.count(e.to)) continue;
    pairs.insert({std::min(e.from, e.to), std::max(e.from, e.to)});
  }
  for (const auto& [a, b] : pairs) {
    LinkCapacity link;
    if (graph_->find_edge(a, b)) link.a_to_b = bandwidth(schedule, a, b, now);
    if (graph_->find_edge(b, a)) link.b_to_a = bandwidth(schedule, b, a, now);
    auto [na, nb] = bgp_exchange(tables_.at(a), tables_.at(b), link, now);
    if (!(na == tables_.at(a))) changed = true;
    if (!(nb == tables_.at(b))) changed = true;
    tables_[a] = std::move(na);
    tables_[b] = std::move(nb);
  }
  return changed;
}

int RoutingPlane::converge(std::span<const ScheduledDeparture> schedule, SimTime now, int max_rounds) {
  int rounds = 0;
  while (rounds < max_rounds) {
    ++rounds;
    if (!exchange(schedule, now)) break;
  }
  return rounds;
}

void RoutingPlane::apply_report(const CapacityReport& report) {
  if (!report.edge) return;
  auto it = tables_.find(report.edge->first);
  if (it == tables_.end()) return;
  it->second = apply_capacity_report(it->second, report);
}

std::optional<HopDecision> RoutingPlane::next_hop(NodeId at, const codec::PiDatagramHeader& header,
                                                  std::span<const NodeId> pinned_path) const {
  return select_next_hop(table(at), header, strategy_, pinned_path);
}

std::vector<ScheduledDeparture> planned_departures(const Scenario& scenario) {
  std::vector<ScheduledDeparture> out;
  for (const MoverSpec& m : scenario.fleet) {
    for (const Leg& leg : expand_schedule(m, scenario.end_time)) {
      out.push_back({m.id, leg.from, leg.to, leg.depart, m.capacity, 0});
    }
  }
  return out;
}

std::optional<RouteQueryResult> query_route(const Scenario& scenario, Address source, Address destination,
                                            Kilograms payload, Strategy strategy) {
  const PiNode* src = scenario.graph.find_by_address(source);
  const PiNode* dst = scenario.graph.find_by_address(destination);
  if (src == nullptr) throw RouteQueryError("unknown source address " + format_address(source));
  if (dst == nullptr) throw RouteQueryError("unknown destination address " + format_address(destination));
  if (payload < 0 || payload > 0xFFFF) throw RouteQueryError("payload must lie in [0, 65535] kg");

  const SimTime window = SimTime::from_hours(scenario.params.capacity_window_h);
  RoutingPlane plane(scenario.graph, strategy, window);
  const std::vector<ScheduledDeparture> schedule = planned_departures(scenario);
  plane.converge(schedule, SimTime());

  codec::PiDatagramHeader header;
  header.source = source;
  header.destination = destination;
  header.payload_length = static_cast<std::uint16_t>(payload);

  RouteQueryResult result;
  result.path.push_back(src->id);
  result.min_free_capacity = kUnlimitedCapacity;
  std::set<NodeId> seen{src->id};
  NodeId at = src->id;
  while (at != dst->id) {
    auto decision = plane.next_hop(at, header);
    if (!decision || !seen.insert(decision->next_hop).second) return std::nullopt;
    result.capacity_shortfall |= decision->capacity_shortfall;
    result.min_free_capacity =
        std::min(result.min_free_capacity, plane.bandwidth(schedule, at, decision->next_hop, SimTime()));
    at = decision->next_hop;
    result.path.push_back(at);
  }
  result.hop_count = static_cast<std::uint32_t>(result.path.size() - 1);
  if (result.hop_count == 0) result.min_free_capacity = 0;
  return result;
}

}  // namespace rbpi
