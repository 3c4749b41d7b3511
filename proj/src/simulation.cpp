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

#include "rbpi/simulation.hpp"

#include <algorithm>
#include <tuple>

namespace rbpi {

const char* recovery_cause_name(RecoveryCause cause) {
  switch (cause) {
    case RecoveryCause::kDamage:
      return "damage";
    case RecoveryCause::kHopLimit:
      return "hop_limit";
    case RecoveryCause::kNoRoute:
      return "no_route";
    case RecoveryCause::kLoss:
      return "loss";
  }
  return "?";
}

double Metrics::on_time_rate() const {
  if (shipments.empty()) return 0.0;
  std::size_t on_time = 0;
  for (const ShipmentOutcome& s : shipments) on_time += s.on_time() ? 1 : 0;
  return static_cast<double>(on_time) / static_cast<double>(shipments.size());
}

Simulation::Simulation(const Scenario& scenario, std::optional<std::uint64_t> seed, std::optional<SimTime> until)
    : scenario_(scenario),
      seed_(seed.value_or(scenario.seed)),
      end_time_(until.value_or(scenario.end_time)),
      inspection_rng_(Rng::stream(seed_, "inspection")),
      damage_rng_(Rng::stream(seed_, "damage")),
      routing_(scenario.graph, scenario.strategy, SimTime::from_hours(scenario.params.capacity_window_h)) {
  const SimParams& p = scenario_.params;
  for (const MoverSpec& spec : scenario_.fleet) {
    PiMover m;
    m.id = spec.id;
    m.capacity = spec.capacity;
    m.fuel_km = spec.fuel_km;
    m.tank_range_km = spec.tank_range_km;
    m.speed_factor = spec.speed_factor;
    m.location = AtNode{spec.start_node};
    m.schedule = expand_schedule(spec, end_time_);
    movers_.emplace(m.id, m);
    mover_state_[m.id].last_reported_free = m.capacity;
    if (!m.schedule.empty()) {
      schedule(m.schedule.front().depart, EventKind::kMoverDepart, {.mover = m.id, .leg = 0});
    }
  }
  routing_.converge(current_schedule(), SimTime());

  for (const Shipment& sh : scenario_.shipments) {
    shipments_[sh.id] = &sh;
    buffers_.emplace(sh.id, ReassemblyBuffer(sh.id));
    ShipmentOutcome o;
    o.id = sh.id;
    o.released = sh.created_at;
    o.deadline = sh.deadline;
    metrics_.shipments.push_back(o);
    schedule(sh.created_at, EventKind::kShipmentRelease, {.shipment = sh.id});
  }

  const SimTime exchange = SimTime::from_hours(p.table_exchange_interval_h);
  schedule(exchange, EventKind::kCapacityReportDelivery);
  schedule(exchange, EventKind::kTableExchange);
  schedule(SimTime::from_hours(p.loss_scan_interval_h), EventKind::kLossScan);
  schedule(end_time_, EventKind::kSimulationEnd);
}

Simulation::~Simulation() = default;

void Simulation::schedule(SimTime at, EventKind kind, EventPayload payload) {
  if (at > end_time_ && kind != EventKind::kSimulationEnd) return;
  Event e;
  e.time = at;
  e.priority_class = default_priority(kind);
  e.kind = kind;
  e.payload = payload;
  queue_.schedule(e);
}

bool Simulation::step() {
  if (finished_) return false;
  if (queue_.empty()) {
    finish();
    return false;
  }
  const Event e = queue_.pop();
  dispatch(e);
  ++metrics_.events_processed;
  if (!ledger().balanced()) metrics_.ledger_balanced_every_event = false;
  if (tracing_) trace_.push_back({e.time, e.kind, e.payload});
  if (e.kind == EventKind::kSimulationEnd) finish();
  if (observer_) observer_(*this, e);
  return !finished_;
}

const Metrics& Simulation::run() {
  while (step()) {
  }
  return metrics_;
}

void Simulation::finish() {
  finished_ = true;
  metrics_.ledger = ledger();
  metrics_.end_time = queue_.now();
  metrics_.segments_in_flight =
      metrics_.segments_dispatched - metrics_.segments_delivered - metrics_.segments_written_off;
}

MassLedger Simulation::ledger() const {
  MassLedger l = ledger_;
  l.at_nodes = 0;
  l.aboard = 0;
  for (const auto& [id, lf] : frames_) {
    if (lf.state != FrameState::kAboard) l.at_nodes += lf.frame.mass();
  }
  for (const auto& [id, m] : movers_) l.aboard += m.loaded_mass();
  return l;
}

Kilograms Simulation::stored_mass(NodeId node) const {
  auto it = stored_.find(node);
  return it == stored_.end() ? 0 : it->second;
}

Kilograms Simulation::inbound_mass(NodeId node) const {
  auto it = inbound_.find(node);
  return it == inbound_.end() ? 0 : it->second;
}

void Simulation::dispatch(const Event& e) {
  switch (e.kind) {
    case EventKind::kShipmentRelease:
      return on_shipment_release(e);
    case EventKind::kMoverDepart:
      return on_mover_depart(e);
    case EventKind::kMoverArrive:
      return on_mover_arrive(e);
    case EventKind::kNodeProcess:
      return on_node_process(e);
    case EventKind::kTableExchange:
      return on_table_exchange(e);
    case EventKind::kCapacityReportDelivery:
      return on_report_delivery(e);
    case EventKind::kInspectionAtNode:
      return on_inspection(e);
    case EventKind::kEcosystemTick:
      return on_ecosystem_tick(e);
    case EventKind::kHoldRelease:
      return on_hold_release(e);
    case EventKind::kLossScan:
      return on_loss_scan(e);
    case EventKind::kRecoveryInjection:
      return on_recovery_injection(e);
    case EventKind::kSimulationEnd:
      return;
  }
}

ShipmentOutcome& Simulation::outcome(ShipmentId id) {
  for (ShipmentOutcome& o : metrics_.shipments) {
    if (o.id == id) return o;
  }
  throw std::logic_error("unknown shipment " + std::to_string(id));
}

std::vector<ScheduledDeparture> Simulation::current_schedule() const {
  std::vector<ScheduledDeparture> out;
  const SimTime now = queue_.now();
  for (const auto& [id, m] : movers_) {
    const MoverState& st = mover_state_.at(id);
    if (st.retired) continue;
    for (std::size_t i = m.next_leg; i < m.schedule.size(); ++i) {
      const Leg& leg = m.schedule[i];
      const Kilograms load = i == m.next_leg ? m.capacity - st.last_reported_free : 0;
      out.push_back({id, leg.from, leg.to, std::max(leg.depart, now), m.capacity, load});
    }
  }
  return out;
}

void Simulation::emit_report(const CapacityReport& report) {
  pending_reports_.push_back(report);
  ++metrics_.capacity_reports;
}

void Simulation::set_ece(Segment& segment) {
  if (segment.header.flags.ece) return;
  segment.header.flags.ece = true;
  ++metrics_.ece_flags;
}

void Simulation::place_at_node(LiveFrame& lf, FrameId id, NodeId node) {
  lf.node = node;
  lf.mover = 0;
  stored_[node] += lf.frame.mass();
  const bool powered = scenario_.graph.node(node).has(Capability::kContainerPower);
  if (tick_ecosystem(lf.eco, powered, queue_.now())) {
    ++metrics_.ecosystem_breaches;
    lf.frame.damaged = true;
  }
  if (!powered && lf.eco.requires_power && lf.eco.unpowered_since && !lf.eco.breached) {
    schedule(*lf.eco.unpowered_since + lf.eco.tolerance + SimTime::from_ticks(1), EventKind::kEcosystemTick,
             {.frame = id});
  }
}

void Simulation::on_shipment_release(const Event& e) {
  const Shipment& sh = *shipments_.at(e.payload.shipment);
  const PiNode* src = scenario_.graph.find_by_address(sh.source_address);
  const PiNode* dst = scenario_.graph.find_by_address(sh.destination_address);
  SegmentationOptions opts;
  opts.max_unit = scenario_.params.max_unit;
  opts.window_size = static_cast<std::uint16_t>(std::clamp<Kilograms>(dst->storage_capacity, 0, 0xFFFF));
  std::vector<Segment> segments = segment_shipment(sh, opts);
  next_sequence_[sh.id] = static_cast<std::uint32_t>(segments.size());
  ShipmentOutcome& o = outcome(sh.id);
  o.slots = static_cast<std::uint32_t>(segments.size());
  for (Segment& seg : segments) {
    const SegmentKey key{sh.id, seg.reassembly.slot, 0};
    slot_status_[{sh.id, key.slot}] = 0;
    ++metrics_.segments_dispatched;
    inject({std::move(seg), key, src->id});
  }
}

void Simulation::inject(PendingInjection inj) {
  const PiNode& node = scenario_.graph.node(inj.node);
  if (stored_mass(inj.node) + inj.segment.mass() > node.storage_capacity) {
    const std::uint64_t n = next_injection_++;
    pending_.emplace(n, std::move(inj));
    schedule(queue_.now() + SimTime::from_hours(scenario_.params.table_exchange_interval_h),
             EventKind::kRecoveryInjection, {.recovery = n});
    return;
  }
  const FrameId id = next_frame_++;
  LiveFrame lf;
  lf.frame = frame_datagram(inj.segment, scenario_.params.pallet_mass, id);
  lf.key = inj.key;
  lf.eco.frame = id;
  lf.eco.requires_power = inj.segment.requires_power();
  lf.eco.tolerance = SimTime::from_hours(scenario_.params.power_tolerance_h);
  lf.state = FrameState::kReady;
  lf.dispatched_at = queue_.now();
  ledger_.dispatched += lf.frame.mass();
  LiveFrame& placed = frames_.emplace(id, std::move(lf)).first->second;
  place_at_node(placed, id, inj.node);

  auto decision = routing_.next_hop(inj.node, placed.frame.segment.datagram);
  if (!decision) {
    ++metrics_.no_route_drops;
    withdraw(id, RecoveryCause::kNoRoute);
    return;
  }
  const PiNode* dst = scenario_.graph.find_by_address(placed.frame.segment.datagram.destination);
  if (placed.frame.segment.datagram.next_header == codec::kConnectionOriented && !decision->path.empty() &&
      decision->path.front() == inj.node && dst != nullptr && decision->path.back() == dst->id) {
    placed.pinned_path = decision->path;
  }
}

void Simulation::withdraw(FrameId id, RecoveryCause cause) {
  auto it = frames_.find(id);
  const LiveFrame& lf = it->second;
  const NodeId node = lf.node;
  const Segment segment = lf.frame.segment;
  const SegmentKey key = lf.key;
  stored_[node] -= lf.frame.mass();
  ledger_.withdrawn += lf.frame.mass();
  frames_.erase(it);
  start_recovery(segment, key, node, cause);
  release_holds(node);
}

void Simulation::start_recovery(const Segment& segment, SegmentKey key, NodeId locus, RecoveryCause cause) {
  RecoveryRecord rec;
  rec.time = queue_.now();
  rec.key = key;
  rec.cause = cause;
  rec.locus = locus;
  if (key.attempt >= scenario_.params.max_recoveries) {
    slot_status_[{key.shipment, key.slot}] = 2;
    ++metrics_.write_offs;
    ++metrics_.segments_written_off;
    ++outcome(key.shipment).slots_written_off;
    recoveries_.push_back(rec);
    return;
  }
  const RecoveryAction action = recover(segment, locus, scenario_.graph);
  rec.action = action;
  recoveries_.push_back(rec);

  Segment replacement = segment;
  replacement.header.sequence_number = next_sequence_[key.shipment]++;
  replacement.datagram.hop_limit = shipments_.at(key.shipment)->hop_limit;
  double delay_h = 0;
  if (action.kind == RecoveryKind::kReprint) {
    ++metrics_.reprints;
    delay_h = scenario_.params.reprint_delay_h;
  } else {
    ++metrics_.reorders;
    delay_h = scenario_.params.reorder_delay_h;
  }
  const std::uint64_t n = next_injection_++;
  pending_.emplace(n, PendingInjection{std::move(replacement), {key.shipment, key.slot, key.attempt + 1}, action.node});
  schedule(queue_.now() + SimTime::from_hours(delay_h), EventKind::kRecoveryInjection, {.recovery = n});
}

void Simulation::deliver(FrameId id) {
  auto it = frames_.find(id);
  LiveFrame lf = std::move(it->second);
  frames_.erase(it);
  const Kilograms mass = lf.frame.mass();
  stored_[lf.node] -= mass;
  ledger_.delivered += mass;
  if (lf.frame.damaged) ++metrics_.damaged_missed;
  ++metrics_.hop_histogram[lf.hops];
  if (make_ack(lf.frame.segment, queue_.now())) ++metrics_.acks;

  const ReassemblyResult r = reassemble(buffers_.at(lf.key.shipment), lf.frame.segment);
  if (r.status == ReassemblyStatus::kDuplicate) {
    ++metrics_.duplicates;
  } else {
    std::uint32_t& status = slot_status_[{lf.key.shipment, lf.key.slot}];
    if (status == 0) {
      status = 1;
      ++metrics_.segments_delivered;
      ++outcome(lf.key.shipment).slots_delivered;
    }
    if (r.status == ReassemblyStatus::kComplete) outcome(lf.key.shipment).completed = queue_.now();
  }
  release_holds(lf.node);
}

void Simulation::release_holds(NodeId node) {
  auto it = waiting_.find(node);
  if (it == waiting_.end() || it->second.empty()) return;
  const PiNode& n = scenario_.graph.node(node);
  if (node_flow_control(n, stored_mass(node) + inbound_mass(node), queue_.now())) return;
  for (MoverId m : it->second) schedule(queue_.now(), EventKind::kHoldRelease, {.mover = m, .node = node});
  it->second.clear();
}

void Simulation::on_mover_depart(const Event& e) {
  PiMover& m = movers_.at(e.payload.mover);
  MoverState& st = mover_state_.at(m.id);
  if (st.retired || st.held || e.payload.leg != m.next_leg || m.next_leg >= m.schedule.size()) return;
  const Leg leg = m.schedule[m.next_leg];
  if (m.at_node() != leg.from) return;
  const RoadEdge* edge = scenario_.graph.find_edge(leg.from, leg.to);
  if (edge == nullptr) return;
  const SimTime now = queue_.now();

  struct Candidate {
    FrameId id;
    bool shortfall;
    int urgency;
  };
  std::vector<Candidate> candidates;
  for (auto& [id, lf] : frames_) {
    if (lf.state != FrameState::kReady || lf.node != leg.from) continue;
    auto decision = routing_.next_hop(leg.from, lf.frame.segment.datagram, lf.pinned_path);
    if (decision && decision->next_hop == leg.to) {
      candidates.push_back({id, decision->capacity_shortfall, codec::urgency_of(lf.frame.segment.datagram.traffic_class)});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.urgency > b.urgency; });

  if (!m.load.empty() || !candidates.empty()) {
    const PiNode& target = scenario_.graph.node(leg.to);
    if (node_flow_control(target, stored_mass(leg.to) + inbound_mass(leg.to), now)) {
      ++metrics_.hold_signals;
      st.held = true;
      waiting_[leg.to].insert(m.id);
      return;
    }
  }

  for (const Candidate& c : candidates) {
    LiveFrame& lf = frames_.at(c.id);
    const ReservationOutcome res = reserve_cargo_space(m, lf.frame, now);
    if (!res.reservation) {
      set_ece(lf.frame.segment);
      continue;
    }
    if (c.shortfall) set_ece(lf.frame.segment);
    emit_report(load_frame(m, lf.frame, *res.reservation, now));
    ++metrics_.loads;
    stored_[leg.from] -= lf.frame.mass();
    lf.state = FrameState::kAboard;
    lf.mover = m.id;
    tick_ecosystem(lf.eco, true, now);
  }
  if (!candidates.empty()) release_holds(leg.from);

  const PiNode& here = scenario_.graph.node(leg.from);
  const DepartResult r = depart(m, *edge, here, now, SimTime::from_hours(scenario_.params.refuel_delay_h));
  switch (r.status) {
    case DepartStatus::kRefueling:
      ++metrics_.refuels;
      schedule(r.at, EventKind::kMoverDepart, {.mover = m.id, .leg = static_cast<std::uint32_t>(m.next_leg)});
      return;
    case DepartStatus::kStranded: {
      ++metrics_.strandings;
      st.retired = true;
      std::vector<FrameId> aboard;
      for (const Frame& f : m.load) aboard.push_back(f.id);
      for (FrameId fid : aboard) {
        UnloadResult u = unload_frame(m, fid, here, stored_mass(here.id), now);
        if (u.retained()) continue;
        LiveFrame& lf = frames_.at(fid);
        lf.frame = std::move(*u.frame);
        lf.state = FrameState::kReady;
        place_at_node(lf, fid, here.id);
        ++metrics_.unloads;
        emit_report(*u.report);
      }
      return;
    }
    case DepartStatus::kDeparted:
      break;
  }
  const Kilograms loaded = m.loaded_mass();
  ++metrics_.traversals;
  if (loaded == 0) ++metrics_.empty_traversals;
  metrics_.loaded_kg_km += static_cast<double>(loaded) * edge->distance_km;
  metrics_.capacity_kg_km += static_cast<double>(m.capacity) * edge->distance_km;
  st.inbound_to = leg.to;
  st.inbound = loaded;
  inbound_[leg.to] += loaded;
  const auto leg_index = static_cast<std::uint32_t>(m.next_leg);
  ++m.next_leg;
  schedule(r.at, EventKind::kMoverArrive, {.mover = m.id, .leg = leg_index});
}

void Simulation::on_mover_arrive(const Event& e) {
  PiMover& m = movers_.at(e.payload.mover);
  MoverState& st = mover_state_.at(m.id);
  const Leg leg = m.schedule.at(e.payload.leg);
  const RoadEdge& edge = *scenario_.graph.find_edge(leg.from, leg.to);
  const SimTime now = queue_.now();
  arrive(m, edge);
  inbound_[st.inbound_to] -= st.inbound;
  st.inbound = 0;
  const PiNode& node = scenario_.graph.node(leg.to);

  if (!m.load.empty()) {
    if (node_flow_control(node, stored_mass(node.id), now)) ++metrics_.congested_arrivals;
    const double p = scenario_.params.transit_damage_probability;
    if (p > 0) {
      for (Frame& f : m.load) {
        if (damage_rng_.bernoulli(p)) f.damaged = true;
      }
    }
  }

  std::vector<FrameId> aboard;
  for (const Frame& f : m.load) aboard.push_back(f.id);
  for (FrameId fid : aboard) {
    UnloadResult u = unload_frame(m, fid, node, stored_mass(node.id), now);
    if (u.retained()) continue;
    LiveFrame& lf = frames_.at(fid);
    lf.frame = std::move(*u.frame);
    lf.state = FrameState::kArriving;
    ++lf.hops;
    place_at_node(lf, fid, node.id);
    ++metrics_.unloads;
    emit_report(*u.report);
    schedule(now, EventKind::kInspectionAtNode, {.frame = fid, .node = node.id});
  }

  if (m.next_leg < m.schedule.size()) {
    const Leg& next = m.schedule[m.next_leg];
    schedule(std::max(next.depart, now), EventKind::kMoverDepart,
             {.mover = m.id, .leg = static_cast<std::uint32_t>(m.next_leg)});
  }
  release_holds(node.id);
}

void Simulation::on_inspection(const Event& e) {
  auto it = frames_.find(e.payload.frame);
  if (it == frames_.end() || it->second.state != FrameState::kArriving) return;
  if (inspect(it->second.frame, scenario_.params.detection_probability, inspection_rng_) ==
      InspectionOutcome::kDamageDetected) {
    ++metrics_.damaged_detected;
    withdraw(e.payload.frame, RecoveryCause::kDamage);
    return;
  }
  schedule(queue_.now() + SimTime::from_hours(scenario_.params.handling_delay_h), EventKind::kNodeProcess,
           {.frame = e.payload.frame, .node = e.payload.node});
}

void Simulation::on_node_process(const Event& e) {
  auto it = frames_.find(e.payload.frame);
  if (it == frames_.end() || it->second.state != FrameState::kArriving) return;
  LiveFrame& lf = it->second;
  codec::PiDatagramHeader& dg = lf.frame.segment.datagram;
  const PiNode* dst = scenario_.graph.find_by_address(dg.destination);
  if (dst != nullptr && dst->id == lf.node) {
    deliver(e.payload.frame);
    return;
  }
  if (dg.hop_limit == 0) {
    ++metrics_.hop_limit_drops;
    withdraw(e.payload.frame, RecoveryCause::kHopLimit);
    return;
  }
  --dg.hop_limit;
  if (!routing_.next_hop(lf.node, dg, lf.pinned_path)) {
    ++metrics_.no_route_drops;
    withdraw(e.payload.frame, RecoveryCause::kNoRoute);
    return;
  }
  lf.state = FrameState::kReady;
}

void Simulation::on_report_delivery(const Event&) {
  for (const CapacityReport& r : pending_reports_) {
    mover_state_.at(r.mover).last_reported_free = r.free_capacity;
    routing_.apply_report(r);
  }
  pending_reports_.clear();
}

void Simulation::on_table_exchange(const Event&) {
  routing_.exchange(current_schedule(), queue_.now());
  const SimTime next = queue_.now() + SimTime::from_hours(scenario_.params.table_exchange_interval_h);
  schedule(next, EventKind::kCapacityReportDelivery);
  schedule(next, EventKind::kTableExchange);
}

void Simulation::on_ecosystem_tick(const Event& e) {
  auto it = frames_.find(e.payload.frame);
  if (it == frames_.end() || it->second.state == FrameState::kAboard) return;
  LiveFrame& lf = it->second;
  const bool powered = scenario_.graph.node(lf.node).has(Capability::kContainerPower);
  if (tick_ecosystem(lf.eco, powered, queue_.now())) {
    ++metrics_.ecosystem_breaches;
    lf.frame.damaged = true;
  }
}

void Simulation::on_hold_release(const Event& e) {
  MoverState& st = mover_state_.at(e.payload.mover);
  if (!st.held) return;
  st.held = false;
  const PiMover& m = movers_.at(e.payload.mover);
  schedule(queue_.now(), EventKind::kMoverDepart, {.mover = m.id, .leg = static_cast<std::uint32_t>(m.next_leg)});
}

void Simulation::on_loss_scan(const Event&) {
  std::vector<InFlightRecord> registry;
  std::map<SegmentKey, FrameId> by_key;
  for (const auto& [id, lf] : frames_) {
    if (lf.state != FrameState::kReady) continue;
    registry.push_back({lf.key, lf.dispatched_at, shipments_.at(lf.key.shipment)->deadline, false});
    by_key[lf.key] = id;
  }
  LossPolicy policy;
  policy.timeout_fraction = scenario_.params.loss_timeout_fraction;
  policy.min_timeout = SimTime::from_hours(scenario_.params.min_loss_timeout_h);
  for (const SegmentKey& key : detect_loss(registry, queue_.now(), policy)) {
    ++metrics_.loss_withdrawals;
    withdraw(by_key.at(key), RecoveryCause::kLoss);
  }
  schedule(queue_.now() + SimTime::from_hours(scenario_.params.loss_scan_interval_h), EventKind::kLossScan);
}

void Simulation::on_recovery_injection(const Event& e) {
  auto it = pending_.find(e.payload.recovery);
  if (it == pending_.end()) return;
  PendingInjection inj = std::move(it->second);
  pending_.erase(it);
  inject(std::move(inj));
}

}  // namespace rbpi
