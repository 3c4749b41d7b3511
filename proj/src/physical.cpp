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

#include "rbpi/physical.hpp"

#include <algorithm>
#include <string>

namespace rbpi {

Kilograms PiMover::loaded_mass() const {
  Kilograms m = 0;
  for (const Frame& f : load) m += f.mass();
  return m;
}

Kilograms PiMover::reserved_mass() const {
  Kilograms m = 0;
  for (const CargoReservation& r : reservations) m += r.mass;
  return m;
}

std::optional<NodeId> PiMover::at_node() const {
  if (const auto* at = std::get_if<AtNode>(&location)) return at->node;
  return std::nullopt;
}

CapacityReport report_free_capacity(const PiMover& mover, SimTime now) {
  CapacityReport r;
  r.mover = mover.id;
  r.free_capacity = mover.free_capacity();
  r.departure_time = now;
  if (const Leg* leg = mover.upcoming_leg()) {
    r.edge = std::make_pair(leg->from, leg->to);
    r.departure_time = std::max(now, leg->depart);
  }
  return r;
}

CapacityReport load_frame(PiMover& mover, Frame frame, const CargoReservation& reservation, SimTime now) {
  auto it = std::find_if(mover.reservations.begin(), mover.reservations.end(), [&](const CargoReservation& r) {
    return r == reservation && r.mover == mover.id && r.frame == frame.id;
  });
  if (it == mover.reservations.end()) {
    throw PhysicalError("access control: no reservation for frame " + std::to_string(frame.id) + " on mover " +
                        std::to_string(mover.id));
  }
  mover.reservations.erase(it);
  if (mover.loaded_mass() + frame.mass() > mover.capacity) {
    throw PhysicalError("mover " + std::to_string(mover.id) + " capacity exceeded despite reservation");
  }
  frame.secured = true;
  mover.load.push_back(std::move(frame));
  return report_free_capacity(mover, now);
}

UnloadResult unload_frame(PiMover& mover, FrameId frame, const PiNode& node, Kilograms node_occupancy,
                          SimTime now) {
  auto it = std::find_if(mover.load.begin(), mover.load.end(), [&](const Frame& f) { return f.id == frame; });
  if (it == mover.load.end()) {
    throw PhysicalError("frame " + std::to_string(frame) + " is not aboard mover " + std::to_string(mover.id));
  }
  const Kilograms mass = it->mass();
  if (node_occupancy + mass > node.storage_capacity) return {};
  UnloadResult result;
  result.frame = std::move(*it);
  mover.load.erase(it);
  result.frame->secured = false;
  result.occupancy_delta = mass;
  result.report = report_free_capacity(mover, now);
  return result;
}

DepartResult depart(PiMover& mover, const RoadEdge& edge, const PiNode& at, SimTime now, SimTime refuel_delay) {
  if (mover.at_node() != edge.from || at.id != edge.from) {
    throw PhysicalError("mover " + std::to_string(mover.id) + " is not at node " + std::to_string(edge.from));
  }
  for (const Frame& f : mover.load) {
    if (!f.secured) {
      throw PhysicalError("departure refused: frame " + std::to_string(f.id) + " aboard mover " +
                          std::to_string(mover.id) + " is not secured");
    }
  }
  if (mover.fuel_km < edge.distance_km) {
    if (!at.has(Capability::kRefuel) || mover.tank_range_km < edge.distance_km) {
      return {DepartStatus::kStranded, now};
    }
    mover.fuel_km = mover.tank_range_km;
    return {DepartStatus::kRefueling, now + refuel_delay};
  }
  mover.location = OnEdge{edge.from, edge.to, now};
  const double hours = travel_time(edge) / mover.speed_factor;
  return {DepartStatus::kDeparted, now + SimTime::from_hours(hours)};
}

void arrive(PiMover& mover, const RoadEdge& edge) {
  mover.fuel_km = std::max(0.0, mover.fuel_km - edge.distance_km);
  mover.location = AtNode{edge.to};
}

bool tick_ecosystem(ContainerEcosystem& eco, bool powered, SimTime now) {
  if (powered || !eco.requires_power) {
    eco.unpowered_since.reset();
    return false;
  }
  if (!eco.unpowered_since) eco.unpowered_since = now;
  if (!eco.breached && now - *eco.unpowered_since > eco.tolerance) {
    eco.breached = true;
    return true;
  }
  return false;
}

}  // namespace rbpi
