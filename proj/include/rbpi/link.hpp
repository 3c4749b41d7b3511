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

#ifndef RBPI_LINK_HPP_
#define RBPI_LINK_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "rbpi/rng.hpp"
#include "rbpi/sim_time.hpp"
#include "rbpi/topology.hpp"
#include "rbpi/transport.hpp"

namespace rbpi {

using FrameId = std::uint64_t;

inline constexpr Kilograms kDefaultPalletMass = 500;
inline constexpr double kDefaultDetectionProbability = 0.95;

// A datagram prepared for node-to-node handoff.
struct Frame {
  FrameId id = 0;
  Segment segment;
  std::string mode_instructions;
  std::uint32_t pallet_count = 1;
  // Ground truth, only observable through inspect().
  bool damaged = false;
  bool secured = false;

  Kilograms mass() const { return segment.mass(); }
  bool operator==(const Frame&) const = default;
};

Frame frame_datagram(const Segment& segment, Kilograms pallet_mass, FrameId id = 0);

struct CargoReservation {
  MoverId mover = 0;
  FrameId frame = 0;
  Kilograms mass = 0;
  SimTime granted_at;

  bool operator==(const CargoReservation&) const = default;
};

struct ReservationOutcome {
  std::optional<CargoReservation> reservation;  // empty when rejected
  // Capacity left after the grant, or the shortfall figure on rejection.
  Kilograms remaining = 0;
};

struct PiMover;

// Grants iff capacity - load - outstanding reservations covers the frame.
// Grants are recorded on the mover.
ReservationOutcome reserve_cargo_space(PiMover& mover, const Frame& frame, SimTime now);

struct HoldSignal {
  NodeId node = 0;
  SimTime issued_at;
  double occupancy_fraction = 0;
};

// Hold iff occupancy / storage_capacity >= threshold (inclusive).
std::optional<HoldSignal> node_flow_control(const PiNode& node, Kilograms occupancy, SimTime now);

enum class InspectionOutcome { kOk, kDamageDetected };

// Undamaged frames always pass; damaged ones are caught with the given
// probability. Draws from `rng` only for damaged frames.
InspectionOutcome inspect(const Frame& frame, double detection_probability, Rng& rng);

// Recovery decision for a frame found damaged at `node`.
RecoveryAction handle_damage(const Frame& frame, const PiNode& node, const RoadGraph& graph);

}  // namespace rbpi

#endif  // RBPI_LINK_HPP_
