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

#ifndef RBPI_SCENARIO_HPP_
#define RBPI_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rbpi/physical.hpp"
#include "rbpi/routing.hpp"
#include "rbpi/topology.hpp"
#include "rbpi/transport.hpp"

namespace rbpi {

// Tunables of a run. Every value can be overridden in the scenario's
// "params" section.
struct SimParams {
  Kilograms pallet_mass = kDefaultPalletMass;
  double detection_probability = kDefaultDetectionProbability;
  double default_occupancy_threshold = 0.8;
  double capacity_window_h = kDefaultCapacityWindowHours;
  double table_exchange_interval_h = 1.0;
  Kilograms max_unit = 1000;
  double loss_timeout_fraction = 0.5;
  double min_loss_timeout_h = 4.0;
  double loss_scan_interval_h = 1.0;
  std::uint32_t max_recoveries = 3;
  double refuel_delay_h = kDefaultRefuelDelayHours;
  double handling_delay_h = 0.25;
  double reprint_delay_h = 1.0;
  double reorder_delay_h = 0.0;
  double transit_damage_probability = 0.0;
  double power_tolerance_h = 2.0;
};

struct MoverSpec {
  MoverId id = 0;
  Kilograms capacity = 0;
  double tank_range_km = 0;
  double fuel_km = 0;
  double speed_factor = 1.0;
  NodeId start_node = 0;
  std::vector<Leg> legs;
  // When set, the leg list repeats with this period until the end of the run.
  std::optional<SimTime> repeat_every;
};

struct Scenario {
  std::string name;
  RoadGraph graph;
  std::vector<MoverSpec> fleet;
  std::vector<Shipment> shipments;  // created_at is the release time
  Strategy strategy = Strategy::kBgp;
  SimParams params;
  std::uint64_t seed = 0;
  SimTime end_time = SimTime::from_hours(168);
  // Comment-free, key-sorted JSON of the input; the config digest covers it.
  std::string canonical;

  std::string digest() const;
};

class ScenarioParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the JSON scenario format (comments allowed). Throws
// ScenarioParseError on syntax errors and on missing or mistyped fields;
// semantic problems are left for validate_scenario().
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

// Accepts "domain:local" or a plain unsigned integer.
std::optional<Address> parse_address(std::string_view text);
std::string format_address(Address address);

ValidationReport validate_scenario(const Scenario& scenario);

// Concrete legs of a mover with departures before `end`.
std::vector<Leg> expand_schedule(const MoverSpec& mover, SimTime end);

// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace rbpi

#endif  // RBPI_SCENARIO_HPP_
