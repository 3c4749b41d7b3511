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


#ifndef RBPI_REPORT_HPP_
#define RBPI_REPORT_HPP_

#include <cstdint>
#include <string>

#include "rbpi/simulation.hpp"

namespace rbpi {

enum class ReportFormat { kObject, kTable };

struct RunReport {
  std::string artifact_version;
  std::string scenario_name;
  std::string config_digest;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::kBgp;
  Metrics metrics;
  double wall_clock_seconds = 0;  // not part of the body
};

RunReport make_report(const Scenario& scenario, const Simulation& sim, double wall_clock_seconds);

// Canonical JSON (sorted keys, no whitespace) of everything except timing.
std::string render_body(const RunReport& report);
// {"body": ..., "envelope": {"wall_clock_s": ...}}
std::string render_object(const RunReport& report);
// Comma-separated sections, deterministic.
std::string render_table(const RunReport& report);
std::string render(const RunReport& report, ReportFormat format);

// FNV-1a of the canonical body.
std::string body_digest(const RunReport& report);
std::string summary_line(const RunReport& report);

}  // namespace rbpi

#endif  // RBPI_REPORT_HPP_
