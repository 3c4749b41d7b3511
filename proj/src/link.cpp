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

#include "rbpi/link.hpp"

#include <algorithm>

#include "rbpi/physical.hpp"

namespace rbpi {
namespace {

const char* treatment_label(std::uint8_t treatment) {
  switch (treatment) {
    case 0:
      return "none";
    case 1:
      return "temperature-controlled";
    case 2:
      return "fragile";
    case 3:
      return "live-animal";
    default:
      return "other";
  }
}

}  // namespace

Frame frame_datagram(const Segment& segment, Kilograms pallet_mass, FrameId id) {
  if (pallet_mass <= 0) throw std::invalid_argument("pallet_mass must be positive");
  Frame f;
  f.id = id;
  f.segment = segment;
  const Kilograms payload = segment.datagram.payload_length;
  f.pallet_count = static_cast<std::uint32_t>(std::max<Kilograms>(1, (payload + pallet_mass - 1) / pallet_mass));
  const std::uint8_t tc = segment.datagram.traffic_class;
  f.mode_instructions = std::string("road;treatment=") + treatment_label(codec::treatment_of(tc)) +
                        ";urgency=" + std::to_string(codec::urgency_of(tc));
  return f;
}

ReservationOutcome reserve_cargo_space(PiMover& mover, const Frame& frame, SimTime now) {
  const Kilograms remaining = mover.capacity - mover.loaded_mass() - mover.reserved_mass();
  if (remaining < frame.mass()) return {std::nullopt, remaining};
  CargoReservation r{mover.id, frame.id, frame.mass(), now};
  mover.reservations.push_back(r);
  return {r, remaining - frame.mass()};
}

std::optional<HoldSignal> node_flow_control(const PiNode& node, Kilograms occupancy, SimTime now) {
  const double fraction = static_cast<double>(occupancy) / static_cast<double>(node.storage_capacity);
  if (fraction >= node.occupancy_threshold) return HoldSignal{node.id, now, fraction};
  return std::nullopt;
}

InspectionOutcome inspect(const Frame& frame, double detection_probability, Rng& rng) {
  if (!frame.damaged) return InspectionOutcome::kOk;
  return rng.bernoulli(detection_probability) ? InspectionOutcome::kDamageDetected : InspectionOutcome::kOk;
}

RecoveryAction handle_damage(const Frame& frame, const PiNode& node, const RoadGraph& graph) {
  return recover(frame.segment, node.id, graph);
}

}  // namespace rbpi
