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


#ifndef RBPI_SIMULATION_HPP_
#define RBPI_SIMULATION_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "rbpi/event_queue.hpp"
#include "rbpi/link.hpp"
#include "rbpi/physical.hpp"
#include "rbpi/rng.hpp"
#include "rbpi/route_query.hpp"
#include "rbpi/scenario.hpp"
#include "rbpi/transport.hpp"

namespace rbpi {

// Mass accounting. Every frame that enters the network is counted in
// `dispatched`; it then sits in node storage, rides a mover, is delivered, or
// is withdrawn (damaged, dropped, overdue). Replacements are new dispatches.
struct MassLedger {
  Kilograms dispatched = 0;
  Kilograms at_nodes = 0;
  Kilograms aboard = 0;
  Kilograms delivered = 0;
  Kilograms withdrawn = 0;

  bool balanced() const { return dispatched == at_nodes + aboard + delivered + withdrawn; }
  bool operator==(const MassLedger&) const = default;
};

struct ShipmentOutcome {
  ShipmentId id = 0;
  SimTime released;
  SimTime deadline;
  std::optional<SimTime> completed;
  std::uint32_t slots = 0;
  std::uint32_t slots_delivered = 0;
  std::uint32_t slots_written_off = 0;

  bool on_time() const { return completed && *completed <= deadline; }
};

enum class RecoveryCause { kDamage, kHopLimit, kNoRoute, kLoss };

const char* recovery_cause_name(RecoveryCause cause);

struct RecoveryRecord {
  SimTime time;
  SegmentKey key;
  RecoveryCause cause = RecoveryCause::kLoss;
  NodeId locus = 0;
  // Empty when the slot ran out of recovery attempts and was written off.
  std::optional<RecoveryAction> action;
};

struct Metrics {
  std::vector<ShipmentOutcome> shipments;
  std::map<std::uint32_t, std::uint64_t> hop_histogram;  // hops traveled -> delivered segments

  std::uint64_t segments_dispatched = 0;  // distinct slots released
  std::uint64_t segments_delivered = 0;
  std::uint64_t segments_written_off = 0;
  std::uint64_t segments_in_flight = 0;

  std::uint64_t reorders = 0;
  std::uint64_t reprints = 0;
  std::uint64_t write_offs = 0;
  std::uint64_t hold_signals = 0;
  std::uint64_t ece_flags = 0;
  std::uint64_t acks = 0;
  std::uint64_t damaged_detected = 0;
  std::uint64_t damaged_missed = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t hop_limit_drops = 0;
  std::uint64_t no_route_drops = 0;
  std::uint64_t loss_withdrawals = 0;
  std::uint64_t capacity_reports = 0;
  std::uint64_t loads = 0;
  std::uint64_t unloads = 0;
  std::uint64_t refuels = 0;
  std::uint64_t strandings = 0;
  std::uint64_t ecosystem_breaches = 0;
  // Loaded movers that reached a node whose stored mass was at or above its
  // threshold. Flow control keeps this at zero.
  std::uint64_t congested_arrivals = 0;

  std::uint64_t traversals = 0;
  std::uint64_t empty_traversals = 0;
  double loaded_kg_km = 0;
  double capacity_kg_km = 0;

  MassLedger ledger;
  bool ledger_balanced_every_event = true;
  std::uint64_t events_processed = 0;
  SimTime end_time;

  double utilization() const { return capacity_kg_km > 0 ? loaded_kg_km / capacity_kg_km : 0.0; }
  double empty_run_ratio() const {
    return traversals > 0 ? static_cast<double>(empty_traversals) / static_cast<double>(traversals) : 0.0;
  }
  double on_time_rate() const;
};

struct TraceEntry {
  SimTime time;
  EventKind kind = EventKind::kSimulationEnd;
  EventPayload payload;
};

class Simulation {
 public:
  using Observer = std::function<void(const Simulation&, const Event&)>;

  // The scenario must validate; it has to outlive the simulation.
  explicit Simulation(const Scenario& scenario, std::optional<std::uint64_t> seed = std::nullopt,
                      std::optional<SimTime> until = std::nullopt);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  // Processes one event. Returns false once the run has ended.
  bool step();
  const Metrics& run();

  bool finished() const { return finished_; }
  SimTime now() const { return queue_.now(); }
  std::uint64_t seed() const { return seed_; }
  const Metrics& metrics() const { return metrics_; }
  const std::vector<RecoveryRecord>& recoveries() const { return recoveries_; }
  const RoutingPlane& routing() const { return routing_; }
  const std::map<MoverId, PiMover>& movers() const { return movers_; }

  // Ledger recomputed from the current frame positions.
  MassLedger ledger() const;
  Kilograms stored_mass(NodeId node) const;
  Kilograms inbound_mass(NodeId node) const;

  void set_observer(Observer observer) { observer_ = std::move(observer); }
  void enable_trace(bool on) { tracing_ = on; }
  const std::vector<TraceEntry>& trace() const { return trace_; }

 private:
  enum class FrameState { kArriving, kReady, kAboard };

  struct LiveFrame {
    Frame frame;  // authoritative copy while at a node
    SegmentKey key;
    ContainerEcosystem eco;
    FrameState state = FrameState::kReady;
    NodeId node = 0;
    MoverId mover = 0;
    std::vector<NodeId> pinned_path;
    std::uint32_t hops = 0;
    SimTime dispatched_at;
  };

  struct MoverState {
    bool retired = false;
    bool held = false;
    NodeId inbound_to = 0;
    Kilograms inbound = 0;
    Kilograms last_reported_free = 0;
  };

  struct PendingInjection {
    Segment segment;
    SegmentKey key;
    NodeId node = 0;
  };

  void schedule(SimTime at, EventKind kind, EventPayload payload = {});
  void dispatch(const Event& event);

  void on_shipment_release(const Event& e);
  void on_mover_depart(const Event& e);
  void on_mover_arrive(const Event& e);
  void on_inspection(const Event& e);
  void on_node_process(const Event& e);
  void on_report_delivery(const Event& e);
  void on_table_exchange(const Event& e);
  void on_ecosystem_tick(const Event& e);
  void on_hold_release(const Event& e);
  void on_loss_scan(const Event& e);
  void on_recovery_injection(const Event& e);

  void inject(PendingInjection injection);
  bool route_or_recover(LiveFrame& lf, FrameId id);
  void withdraw(FrameId id, RecoveryCause cause);
  void start_recovery(const Segment& segment, SegmentKey key, NodeId locus, RecoveryCause cause);
  void deliver(FrameId id);
  void place_at_node(LiveFrame& lf, FrameId id, NodeId node);
  void release_holds(NodeId node);
  void emit_report(const CapacityReport& report);
  void set_ece(Segment& segment);
  std::vector<ScheduledDeparture> current_schedule() const;
  ShipmentOutcome& outcome(ShipmentId id);
  void finish();

  const Scenario& scenario_;
  std::uint64_t seed_;
  SimTime end_time_;
  Rng inspection_rng_;
  Rng damage_rng_;
  EventQueue queue_;
  RoutingPlane routing_;

  std::map<MoverId, PiMover> movers_;
  std::map<MoverId, MoverState> mover_state_;
  std::map<FrameId, LiveFrame> frames_;
  std::map<NodeId, Kilograms> stored_;
  std::map<NodeId, Kilograms> inbound_;
  std::map<NodeId, std::set<MoverId>> waiting_;
  std::map<std::uint64_t, PendingInjection> pending_;
  std::map<ShipmentId, ReassemblyBuffer> buffers_;
  std::map<ShipmentId, const Shipment*> shipments_;
  std::map<ShipmentId, std::uint32_t> next_sequence_;
  std::map<std::pair<ShipmentId, std::uint32_t>, std::uint32_t> slot_status_;  // 0 live, 1 delivered, 2 written off
  std::vector<CapacityReport> pending_reports_;
  std::vector<RecoveryRecord> recoveries_;

  FrameId next_frame_ = 1;
  std::uint64_t next_injection_ = 1;
  Metrics metrics_;
  MassLedger ledger_;
  bool finished_ = false;

  Observer observer_;
  bool tracing_ = false;
  std::vector<TraceEntry> trace_;
};

}  // namespace rbpi

#endif  // RBPI_SIMULATION_HPP_
