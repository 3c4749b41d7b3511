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

#ifndef RBPI_CODEC_HPP_
#define RBPI_CODEC_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace rbpi::codec {

inline constexpr std::size_t kDatagramSize = 16;
inline constexpr std::size_t kSegmentSize = 24;

// Container handling classes carried in the datagram version nibble.
inline constexpr std::uint8_t kVersionDisposable = 1;
inline constexpr std::uint8_t kVersionReusable = 2;

// Routing method carried in next_header.
inline constexpr std::uint8_t kConnectionless = 0;
inline constexpr std::uint8_t kConnectionOriented = 1;

// Treatment classes (low nibble of traffic_class).
enum class Treatment : std::uint8_t {
  kNone = 0,
  kTemperatureControlled = 1,
  kFragile = 2,
  kLiveAnimal = 3,
};

inline constexpr std::uint8_t make_traffic_class(Treatment treatment, std::uint8_t urgency) {
  return static_cast<std::uint8_t>(((urgency & 0x0F) << 4) | (static_cast<std::uint8_t>(treatment) & 0x0F));
}
inline constexpr std::uint8_t treatment_of(std::uint8_t traffic_class) { return traffic_class & 0x0F; }
inline constexpr std::uint8_t urgency_of(std::uint8_t traffic_class) { return traffic_class >> 4; }

inline constexpr std::uint32_t kMaxFlowLabel = 0xFFFFF;
inline constexpr std::uint8_t kSegmentDataOffset = 6;

/// Header framing one pi-container. Encodes to exactly 16 octets.
struct PiDatagramHeader {
  std::uint8_t version = kVersionDisposable;  // 4 bits
  std::uint8_t traffic_class = 0;
  std::uint32_t flow_label = 0;               // 20 bits
  std::uint16_t payload_length = 0;           // kilograms
  std::uint8_t next_header = kConnectionless;
  std::uint8_t hop_limit = 0;
  std::uint32_t source = 0;
  std::uint32_t destination = 0;

  bool operator==(const PiDatagramHeader&) const = default;
};

/// The nine TCP control bits, in wire order from NS (most significant) to FIN.
struct SegmentFlags {
  bool ns = false;
  bool cwr = false;
  bool ece = false;  // congestion identified on the route
  bool urg = false;  // urgent or very valuable freight
  bool ack = false;  // delivery acknowledgement requested
  bool psh = false;  // must be zero
  bool rst = false;  // must be zero
  bool syn = false;  // first container of a shipment
  bool fin = false;  // last container of a shipment

  std::uint16_t to_bits() const;
  static SegmentFlags from_bits(std::uint16_t bits);

  bool operator==(const SegmentFlags&) const = default;
};

/// Header governing shipment flow and sequencing. Encodes to exactly 24 octets.
struct PiSegmentHeader {
  std::uint16_t source_port = 0;
  std::uint16_t destination_port = 0;
  std::uint32_t sequence_number = 0;
  std::uint32_t acknowledgement_number = 0;
  std::uint8_t data_offset = kSegmentDataOffset;  // 4 bits, 32-bit words
  std::uint8_t reserved = 0;                      // 3 bits
  SegmentFlags flags;
  std::uint16_t window_size = 0;  // kilograms of receiver storage
  std::uint16_t checksum = 0;
  std::uint16_t urgent_pointer = 0;
  std::uint32_t options = 0;

  bool operator==(const PiSegmentHeader&) const = default;
};

enum class CodecErrc {
  kLength,
  kField,
  kChecksum,
};

class CodecError : public std::runtime_error {
 public:
  CodecError(CodecErrc code, std::string field, const std::string& what)
      : std::runtime_error(what), code_(code), field_(std::move(field)) {}

  CodecErrc code() const noexcept { return code_; }
  // Name of the offending field; empty for length and checksum errors.
  const std::string& field() const noexcept { return field_; }

 private:
  CodecErrc code_;
  std::string field_;
};

using DatagramBytes = std::array<std::uint8_t, kDatagramSize>;
using SegmentBytes = std::array<std::uint8_t, kSegmentSize>;

// Throws CodecError{kField} if a field violates the header invariants.
void validate(const PiDatagramHeader& header);
// The checksum field is not inspected.
void validate(const PiSegmentHeader& header);

DatagramBytes encode_datagram(const PiDatagramHeader& header);
PiDatagramHeader decode_datagram(std::span<const std::uint8_t> bytes);

// The input checksum is ignored; the encoding carries the computed one.
SegmentBytes encode_segment(const PiSegmentHeader& header);
// Verifies the checksum before any field is interpreted.
PiSegmentHeader decode_segment(std::span<const std::uint8_t> bytes);

// Internet checksum: ones-complement of the ones-complement sum of big-endian
// 16-bit words. An odd trailing octet is padded with a zero octet.
std::uint16_t checksum16(std::span<const std::uint8_t> bytes);

}  // namespace rbpi::codec

#endif  // RBPI_CODEC_HPP_
