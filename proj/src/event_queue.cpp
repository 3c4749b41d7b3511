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

#include "rbpi/event_queue.hpp"

#include <string>
#include <tuple>

namespace rbpi {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::kShipmentRelease: return "ShipmentRelease";
    case EventKind::kMoverDepart: return "MoverDepart";
    case EventKind::kMoverArrive: return "MoverArrive";
    case EventKind::kNodeProcess: return "NodeProcess";
    case EventKind::kTableExchange: return "TableExchange";
    case EventKind::kCapacityReportDelivery: return "CapacityReportDelivery";
    case EventKind::kInspectionAtNode: return "InspectionAtNode";
    case EventKind::kEcosystemTick: return "EcosystemTick";
    case EventKind::kHoldRelease: return "HoldRelease";
    case EventKind::kLossScan: return "LossScan";
    case EventKind::kRecoveryInjection: return "RecoveryInjection";
    case EventKind::kSimulationEnd: return "SimulationEnd";
  }
  return "?";
}

int default_priority(EventKind kind) {
  switch (kind) {
    case EventKind::kMoverArrive: return 0;
    case EventKind::kInspectionAtNode: return 1;
    case EventKind::kEcosystemTick: return 2;
    case EventKind::kNodeProcess: return 3;
    case EventKind::kShipmentRelease: return 4;
    case EventKind::kRecoveryInjection: return 5;
    case EventKind::kHoldRelease: return 6;
    case EventKind::kMoverDepart: return 7;
    case EventKind::kCapacityReportDelivery: return 8;
    case EventKind::kTableExchange: return 9;
    case EventKind::kLossScan: return 10;
    case EventKind::kSimulationEnd: return 11;
  }
  return 11;
}

bool EventQueue::Later::operator()(const Event& a, const Event& b) const {
  return std::tie(a.time, a.priority_class, a.seq) > std::tie(b.time, b.priority_class, b.seq);
}

std::uint64_t EventQueue::schedule(Event event) {
  if (event.time < now_) {
    throw SchedulingError(std::string("cannot schedule ") + event_kind_name(event.kind) + " at t=" +
                          std::to_string(event.time.hours()) + " h before clock t=" + std::to_string(now_.hours()) +
                          " h");
  }
  event.seq = next_seq_++;
  heap_.push(event);
  return event.seq;
}

Event EventQueue::pop() {
  Event e = heap_.top();
  heap_.pop();
  now_ = e.time;
  return e;
}

}  // namespace rbpi
