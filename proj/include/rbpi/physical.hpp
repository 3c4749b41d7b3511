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

#ifndef RBPI_PHYSICAL_HPP_
#define RBPI_PHYSICAL_HPP_

#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rbpi/link.hpp"
#include "rbpi/routing.hpp"
#include "rbpi/sim_time.hpp"
#include "rbpi/topology.hpp"

namespace rbpi {

inline constexpr double kDefaultRefuelDelayHours = 0.5;

struct AtNode {
  NodeId node = 0;
  bool operator==(const AtNode&) const = default;
};

struct OnEdge {
  NodeId from = 0;
  NodeId to = 0;
  SimTime departed;
  bool operator==(const OnEdge&) const = default;
};

using MoverLocation = std::variant<AtNode, OnEdge>;

struct Leg {
  NodeId from = 0;
  NodeId to = 0;
  SimTime depart;
  bool operator==(const Leg&) const = default;
};

// A capacity-constrained road vehicle: the transmission medium.
struct PiMover {
  MoverId id = 0;
  Kilograms capacity = 0;
  std::vector<Frame> load;
  std::vector<CargoReservation> reservations;
  double fuel_km = 0;  // range remaining
  double tank_range_km = 0;
  double speed_factor = 1.0;
  MoverLocation location;
  std::vector<Leg> schedule;
  std::size_t next_leg = 0;  // first leg not yet departed

  Kilograms loaded_mass() const;
  Kilograms reserved_mass() const;
  Kilograms free_capacity() const { return capacity - loaded_mass(); }
  const Leg* upcoming_leg() const { return next_leg < schedule.size() ? &schedule[next_leg] : nullptr; }
  std::optional<NodeId> at_node() const;

  bool operator==(const PiMover&) const = default;
};

class PhysicalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stows a frame (secured automatically) against its reservation. Throws
// PhysicalError when no matching reservation exists.
CapacityReport load_frame(PiMover& mover, Frame frame, const CargoReservation& reservation, SimTime now);

struct UnloadResult {
  // Frame moved into node storage; empty when retained aboard.
  std::optional<Frame> frame;
  Kilograms occupancy_delta = 0;
  std::optional<CapacityReport> report;
  bool retained() const { return !frame.has_value(); }
};

// Moves a frame into node storage. When storage would overflow the frame stays
// aboard and nothing changes. Throws PhysicalError if the frame is not aboard.
UnloadResult unload_frame(PiMover& mover, FrameId frame, const PiNode& node, Kilograms node_occupancy, SimTime now);

enum class DepartStatus { kDeparted, kRefueling, kStranded };

struct DepartResult {
  DepartStatus status = DepartStatus::kDeparted;
  // Arrival time when departed; ready time when refueling.
  SimTime at;
};

// Refuels to a full tank first (service delay) when range is short and the
// node can refuel; otherwise a short range strands the mover. Throws
// PhysicalError for an unsecured frame aboard or a mover not at edge.from.
DepartResult depart(PiMover& mover, const RoadEdge& edge, const PiNode& at, SimTime now,
                    SimTime refuel_delay = SimTime::from_hours(kDefaultRefuelDelayHours));

// Completes a traversal: consumes fuel and places the mover at edge.to.
void arrive(PiMover& mover, const RoadEdge& edge);

struct ContainerEcosystem {
  FrameId frame = 0;
  bool requires_power = false;
  std::optional<SimTime> unpowered_since;
  SimTime tolerance;
  bool breached = false;
};

// Tracks unpowered dwell. Returns true when this tick declares a breach
// (unpowered for strictly longer than the tolerance).
bool tick_ecosystem(ContainerEcosystem& eco, bool powered, SimTime now);

CapacityReport report_free_capacity(const PiMover& mover, SimTime now);

}  // namespace rbpi

#endif  // RBPI_PHYSICAL_HPP_
