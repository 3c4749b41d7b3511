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

#include "rbpi/codec.hpp"

#include <string>

namespace rbpi::codec {
namespace {

void put16(std::uint8_t* out, std::uint16_t v) {
  out[0] = static_cast<std::uint8_t>(v >> 8);
  out[1] = static_cast<std::uint8_t>(v);
}

void put32(std::uint8_t* out, std::uint32_t v) {
  out[0] = static_cast<std::uint8_t>(v >> 24);
  out[1] = static_cast<std::uint8_t>(v >> 16);
  out[2] = static_cast<std::uint8_t>(v >> 8);
  out[3] = static_cast<std::uint8_t>(v);
}

std::uint16_t get16(const std::uint8_t* in) {
  return static_cast<std::uint16_t>((in[0] << 8) | in[1]);
}

std::uint32_t get32(const std::uint8_t* in) {
  return (static_cast<std::uint32_t>(in[0]) << 24) | (static_cast<std::uint32_t>(in[1]) << 16) |
         (static_cast<std::uint32_t>(in[2]) << 8) | static_cast<std::uint32_t>(in[3]);
}

[[noreturn]] void field_error(const char* field, const std::string& detail) {
  throw CodecError(CodecErrc::kField, field, std::string("invalid ") + field + ": " + detail);
}

void check_length(std::span<const std::uint8_t> bytes, std::size_t expected, const char* kind) {
  if (bytes.size() != expected) {
    throw CodecError(CodecErrc::kLength, "",
                     std::string(kind) + " must be " + std::to_string(expected) + " octets, got " +
                         std::to_string(bytes.size()));
  }
}

}  // namespace

std::uint16_t SegmentFlags::to_bits() const {
  std::uint16_t bits = 0;
  const bool ordered[] = {ns, cwr, ece, urg, ack, psh, rst, syn, fin};
  for (bool b : ordered) bits = static_cast<std::uint16_t>((bits << 1) | (b ? 1 : 0));
  return bits;
}

SegmentFlags SegmentFlags::from_bits(std::uint16_t bits) {
  SegmentFlags f;
  f.ns = bits & 0x100;
  f.cwr = bits & 0x080;
  f.ece = bits & 0x040;
  f.urg = bits & 0x020;
  f.ack = bits & 0x010;
  f.psh = bits & 0x008;
  f.rst = bits & 0x004;
  f.syn = bits & 0x002;
  f.fin = bits & 0x001;
  return f;
}

void validate(const PiDatagramHeader& h) {
  if (h.version != kVersionDisposable && h.version != kVersionReusable) {
    field_error("version", "must be 1 (disposable) or 2 (reusable), got " + std::to_string(h.version));
  }
  if (h.flow_label > kMaxFlowLabel) {
    field_error("flow_label", "exceeds 20 bits");
  }
  if (h.next_header != kConnectionless && h.next_header != kConnectionOriented) {
    field_error("next_header", "must be 0 or 1, got " + std::to_string(h.next_header));
  }
}

void validate(const PiSegmentHeader& h) {
  if (h.data_offset != kSegmentDataOffset) {
    field_error("data_offset", "must be 6, got " + std::to_string(h.data_offset));
  }
  if (h.reserved != 0) field_error("reserved", "must be zero");
  if (h.flags.psh) field_error("flags", "PSH must be zero");
  if (h.flags.rst) field_error("flags", "RST must be zero");
  if (h.urgent_pointer != 0) field_error("urgent_pointer", "must be zero");
}

DatagramBytes encode_datagram(const PiDatagramHeader& h) {
  validate(h);
  DatagramBytes out{};
  out[0] = static_cast<std::uint8_t>((h.version << 4) | (h.traffic_class >> 4));
  out[1] = static_cast<std::uint8_t>(((h.traffic_class & 0x0F) << 4) | ((h.flow_label >> 16) & 0x0F));
  put16(&out[2], static_cast<std::uint16_t>(h.flow_label & 0xFFFF));
  put16(&out[4], h.payload_length);
  out[6] = h.next_header;
  out[7] = h.hop_limit;
  put32(&out[8], h.source);
  put32(&out[12], h.destination);
  return out;
}

PiDatagramHeader decode_datagram(std::span<const std::uint8_t> bytes) {
  check_length(bytes, kDatagramSize, "datagram header");
  PiDatagramHeader h;
  h.version = bytes[0] >> 4;
  h.traffic_class = static_cast<std::uint8_t>(((bytes[0] & 0x0F) << 4) | (bytes[1] >> 4));
  h.flow_label = (static_cast<std::uint32_t>(bytes[1] & 0x0F) << 16) | get16(&bytes[2]);
  h.payload_length = get16(&bytes[4]);
  h.next_header = bytes[6];
  h.hop_limit = bytes[7];
  h.source = get32(&bytes[8]);
  h.destination = get32(&bytes[12]);
  validate(h);
  return h;
}

SegmentBytes encode_segment(const PiSegmentHeader& h) {
  validate(h);
  SegmentBytes out{};
  put16(&out[0], h.source_port);
  put16(&out[2], h.destination_port);
  put32(&out[4], h.sequence_number);
  put32(&out[8], h.acknowledgement_number);
  const std::uint16_t flags = h.flags.to_bits();
  out[12] = static_cast<std::uint8_t>((h.data_offset << 4) | ((h.reserved & 0x07) << 1) | (flags >> 8));
  out[13] = static_cast<std::uint8_t>(flags & 0xFF);
  put16(&out[14], h.window_size);
  // out[16..17] stays zero while summing.
  put16(&out[18], h.urgent_pointer);
  put32(&out[20], h.options);
  put16(&out[16], checksum16(out));
  return out;
}

PiSegmentHeader decode_segment(std::span<const std::uint8_t> bytes) {
  check_length(bytes, kSegmentSize, "segment header");
  // A correct encoding sums (with its checksum) to 0xFFFF, so the complement is zero.
  if (checksum16(bytes) != 0) {
    throw CodecError(CodecErrc::kChecksum, "", "segment checksum mismatch (wire corruption)");
  }
  PiSegmentHeader h;
  h.source_port = get16(&bytes[0]);
  h.destination_port = get16(&bytes[2]);
  h.sequence_number = get32(&bytes[4]);
  h.acknowledgement_number = get32(&bytes[8]);
  h.data_offset = bytes[12] >> 4;
  h.reserved = (bytes[12] >> 1) & 0x07;
  h.flags = SegmentFlags::from_bits(static_cast<std::uint16_t>(((bytes[12] & 0x01) << 8) | bytes[13]));
  h.window_size = get16(&bytes[14]);
  h.checksum = get16(&bytes[16]);
  h.urgent_pointer = get16(&bytes[18]);
  h.options = get32(&bytes[20]);
  validate(h);
  return h;
}

std::uint16_t checksum16(std::span<const std::uint8_t> bytes) {
  std::uint32_t sum = 0;
  std::size_t i = 0;
  for (; i + 1 < bytes.size(); i += 2) {
    sum += static_cast<std::uint32_t>((bytes[i] << 8) | bytes[i + 1]);
    sum = (sum & 0xFFFF) + (sum >> 16);
  }
  if (i < bytes.size()) {
    sum += static_cast<std::uint32_t>(bytes[i] << 8);
    sum = (sum & 0xFFFF) + (sum >> 16);
  }
  return static_cast<std::uint16_t>(~sum & 0xFFFF);
}

}  // namespace rbpi::codec
