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


#ifndef RBPI_ROUTE_QUERY_HPP_
#define RBPI_ROUTE_QUERY_HPP_

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rbpi/routing.hpp"
#include "rbpi/scenario.hpp"

namespace rbpi {

// Routing tables of every node plus the exchange procedure that keeps them
// current. "bgp" runs the intra-domain tree inside each carrier domain and
// the path-vector exchange across all adjacent pairs; "ospf" stops at the
// domain border; "rip" floods hop counts over the whole graph.
class RoutingPlane {
 public:
  RoutingPlane(const RoadGraph& graph, Strategy strategy, SimTime window);

  Strategy strategy() const { return strategy_; }
  const std::map<NodeId, RoutingTable>& tables() const { return tables_; }
  const RoutingTable& table(NodeId node) const;

  // Repeats exchange rounds until no table changes (bounded by `max_rounds`).
  // Returns the number of rounds run.
  int converge(std::span<const ScheduledDeparture> schedule, SimTime now, int max_rounds = 32);

  // One synchronous exchange round with bandwidth taken from `schedule` over
  // [now, now + window]. Returns true when any table changed.
  bool exchange(std::span<const ScheduledDeparture> schedule, SimTime now);

  void apply_report(const CapacityReport& report);

  std::optional<HopDecision> next_hop(NodeId at, const codec::PiDatagramHeader& header,
                                      std::span<const NodeId> pinned_path = {}) const;

  Kilograms bandwidth(std::span<const ScheduledDeparture> schedule, NodeId from, NodeId to, SimTime now) const;

 private:
  bool refresh_intra_capacity(std::span<const ScheduledDeparture> schedule, SimTime now);

  const RoadGraph* graph_;
  Strategy strategy_;
  SimTime window_;
  std::map<NodeId, RoutingTable> tables_;
};

// Departures of every mover over the whole run, all with zero load.
std::vector<ScheduledDeparture> planned_departures(const Scenario& scenario);

class RouteQueryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RouteQueryResult {
  std::vector<NodeId> path;
  std::uint32_t hop_count = 0;
  // Smallest edge bandwidth along the path within the capacity window.
  Kilograms min_free_capacity = 0;
  bool capacity_shortfall = false;
};

// Converges tables at time zero and follows next-hop decisions from source to
// destination. Empty when there is no route. Throws RouteQueryError for
// addresses that name no node and for payloads outside [0, 65535].
std::optional<RouteQueryResult> query_route(const Scenario& scenario, Address source, Address destination,
                                            Kilograms payload, Strategy strategy);

}  // namespace rbpi

#endif  // RBPI_ROUTE_QUERY_HPP_
