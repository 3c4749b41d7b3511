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

#ifndef RBPI_SIM_TIME_HPP_
#define RBPI_SIM_TIME_HPP_

#include <cmath>
#include <compare>
#include <cstdint>

namespace rbpi {

// Simulation time in fixed-point hours with millihour resolution. Integer
// ticks keep event ordering exact and platform independent.
class SimTime {
 public:
  static constexpr std::int64_t kTicksPerHour = 1000;

  constexpr SimTime() = default;

  static constexpr SimTime from_ticks(std::int64_t millihours) { return SimTime(millihours); }
  static SimTime from_hours(double hours) { return SimTime(std::llround(hours * kTicksPerHour)); }

  constexpr std::int64_t ticks() const { return ticks_; }
  constexpr double hours() const { return static_cast<double>(ticks_) / kTicksPerHour; }

  constexpr SimTime operator+(SimTime o) const { return SimTime(ticks_ + o.ticks_); }
  constexpr SimTime operator-(SimTime o) const { return SimTime(ticks_ - o.ticks_); }
  constexpr SimTime& operator+=(SimTime o) {
    ticks_ += o.ticks_;
    return *this;
  }

  constexpr auto operator<=>(const SimTime&) const = default;

 private:
  constexpr explicit SimTime(std::int64_t t) : ticks_(t) {}
  std::int64_t ticks_ = 0;
};

}  // namespace rbpi

#endif  // RBPI_SIM_TIME_HPP_
