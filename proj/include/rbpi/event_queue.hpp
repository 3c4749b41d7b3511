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

#ifndef RBPI_EVENT_QUEUE_HPP_
#define RBPI_EVENT_QUEUE_HPP_

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "rbpi/sim_time.hpp"
#include "rbpi/topology.hpp"

namespace rbpi {

enum class EventKind : std::uint8_t {
  kShipmentRelease,
  kMoverDepart,
  kMoverArrive,
  kNodeProcess,
  kTableExchange,
  kCapacityReportDelivery,
  kInspectionAtNode,
  kEcosystemTick,
  kHoldRelease,
  kLossScan,
  kRecoveryInjection,
  kSimulationEnd,
};

const char* event_kind_name(EventKind kind);

// Same-instant ordering: arrivals complete before departures, departures
// before table exchanges, so capacity reports reflect finished handoffs.
int default_priority(EventKind kind);

struct EventPayload {
  MoverId mover = 0;
  std::uint32_t leg = 0;
  std::uint64_t frame = 0;
  std::uint32_t shipment = 0;
  NodeId node = 0;
  std::uint64_t recovery = 0;
};

struct Event {
  SimTime time;
  int priority_class = 0;
  std::uint64_t seq = 0;  // assigned by the queue
  EventKind kind = EventKind::kSimulationEnd;
  EventPayload payload;
};

class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Pops in (time, priority_class, seq) order: a total, deterministic order.
class EventQueue {
 public:
  // Assigns seq and returns it. Throws SchedulingError for times before now().
  std::uint64_t schedule(Event event);
  Event pop();  // advances now()

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  SimTime now() const { return now_; }
  const Event& top() const { return heap_.top(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const;
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  SimTime now_;
};

}  // namespace rbpi

#endif  // RBPI_EVENT_QUEUE_HPP_
