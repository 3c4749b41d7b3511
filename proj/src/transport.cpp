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

#include "rbpi/transport.hpp"

#include <algorithm>
#include <numeric>

namespace rbpi {

Kilograms Segment::mass() const {
  Kilograms m = 0;
  for (const FreightItem& i : items) m += i.mass;
  return m;
}

bool Segment::requires_power() const {
  return std::any_of(items.begin(), items.end(), [](const FreightItem& i) { return i.requires_power; });
}

bool Segment::fully_reproducible() const {
  return std::all_of(items.begin(), items.end(), [](const FreightItem& i) { return i.reproducible_3d; });
}

std::vector<Segment> segment_shipment(const Shipment& shipment, const SegmentationOptions& options) {
  if (shipment.items.empty()) throw TransportError("shipment " + std::to_string(shipment.id) + " has no items");
  if (options.max_unit <= 0 || options.max_unit > 0xFFFF) {
    throw TransportError("max_unit must lie in [1, 65535] kg");
  }
  for (const FreightItem& item : shipment.items) {
    if (item.mass <= 0) throw TransportError("item " + std::to_string(item.id) + " has non-positive mass");
    if (item.mass > options.max_unit) {
      throw TransportError("item " + std::to_string(item.id) + " (" + std::to_string(item.mass) +
                           " kg) exceeds max unit " + std::to_string(options.max_unit) + " kg: unsegmentable");
    }
  }

  std::vector<std::uint32_t> order(shipment.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return shipment.items[a].mass > shipment.items[b].mass;
  });

  struct Bin {
    Kilograms load = 0;
    std::vector<std::uint32_t> positions;
  };
  std::vector<Bin> bins;
  for (std::uint32_t pos : order) {
    const Kilograms m = shipment.items[pos].mass;
    auto fit = std::find_if(bins.begin(), bins.end(), [&](const Bin& b) { return b.load + m <= options.max_unit; });
    if (fit == bins.end()) {
      bins.push_back({});
      fit = std::prev(bins.end());
    }
    fit->load += m;
    fit->positions.push_back(pos);
  }

  std::vector<Segment> segments;
  segments.reserve(bins.size());
  const auto count = static_cast<std::uint32_t>(bins.size());
  for (std::uint32_t slot = 0; slot < count; ++slot) {
    Segment s;
    s.shipment = shipment.id;
    s.reassembly.slot = slot;
    s.reassembly.slot_count = count;
    s.reassembly.item_positions = bins[slot].positions;
    for (std::uint32_t pos : bins[slot].positions) s.items.push_back(shipment.items[pos]);

    codec::PiSegmentHeader& h = s.header;
    h.source_port = shipment.source_port;
    h.destination_port = shipment.destination_port;
    h.sequence_number = options.base_sequence + slot;
    h.window_size = options.window_size;
    h.flags.syn = slot == 0;
    h.flags.fin = slot + 1 == count;
    h.flags.ack = shipment.ack_requested;
    h.flags.urg = shipment.urgent;

    codec::PiDatagramHeader& d = s.datagram;
    d.version = shipment.container_version;
    d.traffic_class = shipment.treatment;
    d.flow_label = shipment.flow_label;
    d.payload_length = static_cast<std::uint16_t>(bins[slot].load);
    d.next_header = shipment.connection_oriented ? codec::kConnectionOriented : codec::kConnectionless;
    d.hop_limit = shipment.hop_limit;
    d.source = shipment.source_address;
    d.destination = shipment.destination_address;
    segments.push_back(std::move(s));
  }
  return segments;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> ReassemblyBuffer::expected_span() const {
  if (!syn_sequence_ || !fin_sequence_) return std::nullopt;
  return std::make_pair(*syn_sequence_, *fin_sequence_);
}

ReassemblyResult reassemble(ReassemblyBuffer& buffer, const Segment& segment) {
  if (segment.shipment != buffer.shipment_) {
    throw TransportError("segment of shipment " + std::to_string(segment.shipment) +
                         " offered to reassembly buffer of shipment " + std::to_string(buffer.shipment_));
  }
  const std::uint32_t slot = segment.reassembly.slot;
  if (buffer.received_.count(slot) != 0) return {ReassemblyStatus::kDuplicate, {}};
  buffer.received_.emplace(slot, segment);
  if (segment.header.flags.syn) buffer.syn_sequence_ = segment.header.sequence_number;
  if (segment.header.flags.fin) {
    buffer.fin_sequence_ = segment.header.sequence_number;
    buffer.fin_slot_ = slot;
  }

  if (buffer.complete_ || !buffer.syn_sequence_ || !buffer.fin_slot_) return {ReassemblyStatus::kPending, {}};
  for (std::uint32_t s = 0; s <= *buffer.fin_slot_; ++s) {
    if (buffer.received_.count(s) == 0) return {ReassemblyStatus::kPending, {}};
  }
  buffer.complete_ = true;

  std::vector<std::pair<std::uint32_t, FreightItem>> placed;
  for (const auto& [s, seg] : buffer.received_) {
    for (std::size_t i = 0; i < seg.items.size(); ++i) {
      placed.emplace_back(seg.reassembly.item_positions.at(i), seg.items[i]);
    }
  }
  std::sort(placed.begin(), placed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  ReassemblyResult result{ReassemblyStatus::kComplete, {}};
  result.items.reserve(placed.size());
  for (auto& [pos, item] : placed) result.items.push_back(item);
  return result;
}

std::optional<Acknowledgement> make_ack(const Segment& segment, SimTime now) {
  if (!segment.header.flags.ack) return std::nullopt;
  return Acknowledgement{segment.shipment, segment.header.sequence_number + 1, now};
}

std::vector<SegmentKey> detect_loss(std::span<const InFlightRecord> registry, SimTime now, const LossPolicy& policy) {
  std::vector<SegmentKey> overdue;
  for (const InFlightRecord& r : registry) {
    if (r.delivered) continue;
    const std::int64_t span = std::max<std::int64_t>(0, (r.deadline - r.dispatched_at).ticks());
    const SimTime timeout = std::max(SimTime::from_ticks(std::llround(span * policy.timeout_fraction)),
                                     policy.min_timeout);
    if (now > r.dispatched_at + timeout) overdue.push_back(r.key);
  }
  return overdue;
}

RecoveryAction recover(const Segment& segment, NodeId locus, const RoadGraph& graph) {
  const PiNode* here = graph.find_node(locus);
  if (segment.fully_reproducible() && here != nullptr && here->has(Capability::kPrinter3d)) {
    return {RecoveryKind::kReprint, locus};
  }
  const PiNode* origin = graph.find_by_address(segment.datagram.source);
  return {RecoveryKind::kReorder, origin != nullptr ? origin->id : locus};
}

}  // namespace rbpi
