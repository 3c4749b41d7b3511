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

#ifndef RBPI_TRANSPORT_HPP_
#define RBPI_TRANSPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbpi/codec.hpp"
#include "rbpi/sim_time.hpp"
#include "rbpi/topology.hpp"

namespace rbpi {

using ShipmentId = std::uint32_t;
using ItemId = std::uint32_t;

struct FreightItem {
  ItemId id = 0;
  Kilograms mass = 0;
  bool reproducible_3d = false;
  bool requires_power = false;

  bool operator==(const FreightItem&) const = default;
};

struct Shipment {
  ShipmentId id = 0;
  Address source_address = 0;
  Address destination_address = 0;
  std::vector<FreightItem> items;
  SimTime created_at;
  SimTime deadline;
  double budget = 0;               // carried as data, never optimized
  std::uint8_t treatment = 0;      // traffic-class byte
  std::uint32_t flow_label = 0;
  std::uint8_t container_version = codec::kVersionDisposable;
  bool connection_oriented = false;
  std::uint8_t hop_limit = 16;
  bool ack_requested = false;
  bool urgent = false;
  std::uint16_t source_port = 0;
  std::uint16_t destination_port = 0;
};

// Where each item of a segment sits in the original shipment, and which slot
// (0-based container index) the segment fills.
struct ReassemblyInstructions {
  std::uint32_t slot = 0;
  std::uint32_t slot_count = 0;
  std::vector<std::uint32_t> item_positions;

  bool operator==(const ReassemblyInstructions&) const = default;
};

struct Segment {
  ShipmentId shipment = 0;
  codec::PiSegmentHeader header;
  codec::PiDatagramHeader datagram;
  std::vector<FreightItem> items;
  ReassemblyInstructions reassembly;

  Kilograms mass() const;
  bool requires_power() const;
  bool fully_reproducible() const;
  bool operator==(const Segment&) const = default;
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SegmentationOptions {
  Kilograms max_unit = 0;
  std::uint32_t base_sequence = 0;
  std::uint16_t window_size = 0;  // receiver storage, kilograms
};

// First-fit-decreasing packing of items into containers of at most max_unit.
// Throws TransportError when an item alone exceeds max_unit.
std::vector<Segment> segment_shipment(const Shipment& shipment, const SegmentationOptions& options);

enum class ReassemblyStatus { kPending, kComplete, kDuplicate };

struct ReassemblyResult {
  ReassemblyStatus status = ReassemblyStatus::kPending;
  // Items in original shipment order, set when complete.
  std::vector<FreightItem> items;
};

class ReassemblyBuffer {
 public:
  explicit ReassemblyBuffer(ShipmentId shipment) : shipment_(shipment) {}

  ShipmentId shipment() const { return shipment_; }
  const std::map<std::uint32_t, Segment>& received() const { return received_; }
  // (first sequence, last sequence) once both SYN and FIN have been seen.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> expected_span() const;
  bool complete() const { return complete_; }

 private:
  friend ReassemblyResult reassemble(ReassemblyBuffer& buffer, const Segment& segment);

  ShipmentId shipment_;
  std::map<std::uint32_t, Segment> received_;  // keyed by slot
  std::optional<std::uint32_t> syn_sequence_;
  std::optional<std::uint32_t> fin_sequence_;
  std::optional<std::uint32_t> fin_slot_;
  bool complete_ = false;
};

// Stores a delivered segment. Replacement copies carry a fresh sequence number
// but the original slot, so a second arrival for a slot is a duplicate.
// Throws TransportError when the segment belongs to another shipment.
ReassemblyResult reassemble(ReassemblyBuffer& buffer, const Segment& segment);

struct Acknowledgement {
  ShipmentId shipment = 0;
  std::uint32_t acknowledgement_number = 0;
  SimTime time;
};

std::optional<Acknowledgement> make_ack(const Segment& segment, SimTime now);

struct SegmentKey {
  ShipmentId shipment = 0;
  std::uint32_t slot = 0;
  std::uint32_t attempt = 0;

  auto operator<=>(const SegmentKey&) const = default;
};

struct InFlightRecord {
  SegmentKey key;
  SimTime dispatched_at;
  SimTime deadline;
  bool delivered = false;
};

struct LossPolicy {
  double timeout_fraction = 0.5;  // of the dispatch-to-deadline span
  SimTime min_timeout;
};

std::vector<SegmentKey> detect_loss(std::span<const InFlightRecord> registry, SimTime now,
                                    const LossPolicy& policy = {});

enum class RecoveryKind { kReprint, kReorder };

struct RecoveryAction {
  RecoveryKind kind = RecoveryKind::kReorder;
  // Reprint: the locus. Reorder: the shipment source node.
  NodeId node = 0;

  bool operator==(const RecoveryAction&) const = default;
};

// Reprint only when every item is reproducible and the locus has a printer.
RecoveryAction recover(const Segment& segment, NodeId locus, const RoadGraph& graph);

}  // namespace rbpi

#endif  // RBPI_TRANSPORT_HPP_
