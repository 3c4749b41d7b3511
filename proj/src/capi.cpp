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

#include "rbpi/rbpi.h"

#include <chrono>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "rbpi/codec.hpp"
#include "rbpi/report.hpp"
#include "rbpi/route_query.hpp"
#include "rbpi/scenario.hpp"
#include "rbpi/simulation.hpp"

struct rbpi_scenario {
  rbpi::Scenario scenario;
  rbpi::ValidationReport validation;
  std::string digest;
};

struct rbpi_report {
  rbpi::RunReport report;
  std::string object;
  std::string table;
  std::string body;
  std::string summary;
  std::string digest;
};

struct rbpi_route {
  rbpi::RouteQueryResult result;
};

namespace {

thread_local std::string g_last_error;

rbpi_status fail(rbpi_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

rbpi_status codec_status(const rbpi::codec::CodecError& e) {
  switch (e.code()) {
    case rbpi::codec::CodecErrc::kLength:
      return fail(RBPI_LENGTH, e.what());
    case rbpi::codec::CodecErrc::kField:
      return fail(RBPI_FIELD, e.what());
    case rbpi::codec::CodecErrc::kChecksum:
      return fail(RBPI_CHECKSUM, e.what());
  }
  return fail(RBPI_INTERNAL, e.what());
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
rbpi_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const rbpi::codec::CodecError& e) {
    return codec_status(e);
  } catch (const rbpi::ScenarioParseError& e) {
    return fail(RBPI_PARSE, e.what());
  } catch (const rbpi::RouteQueryError& e) {
    return fail(RBPI_NO_ROUTE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RBPI_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RBPI_INTERNAL, e.what());
  }
}

rbpi::codec::PiDatagramHeader to_cpp(const rbpi_datagram& d) {
  rbpi::codec::PiDatagramHeader h;
  h.version = d.version;
  h.traffic_class = d.traffic_class;
  h.flow_label = d.flow_label;
  h.payload_length = d.payload_length;
  h.next_header = d.next_header;
  h.hop_limit = d.hop_limit;
  h.source = d.source;
  h.destination = d.destination;
  return h;
}

rbpi_datagram to_c(const rbpi::codec::PiDatagramHeader& h) {
  return {h.version, h.traffic_class, h.flow_label, h.payload_length, h.next_header, h.hop_limit, h.source,
          h.destination};
}

rbpi::codec::PiSegmentHeader to_cpp(const rbpi_segment& s) {
  rbpi::codec::PiSegmentHeader h;
  h.source_port = s.source_port;
  h.destination_port = s.destination_port;
  h.sequence_number = s.sequence_number;
  h.acknowledgement_number = s.acknowledgement_number;
  h.data_offset = s.data_offset;
  h.reserved = s.reserved;
  h.flags = rbpi::codec::SegmentFlags::from_bits(s.flags);
  h.window_size = s.window_size;
  h.checksum = s.checksum;
  h.urgent_pointer = s.urgent_pointer;
  h.options = s.options;
  return h;
}

rbpi_segment to_c(const rbpi::codec::PiSegmentHeader& h) {
  return {h.source_port, h.destination_port, h.sequence_number, h.acknowledgement_number, h.data_offset,
          h.reserved,    h.flags.to_bits(),  h.window_size,     h.checksum,               h.urgent_pointer,
          h.options};
}

const char* nth_code(const std::vector<rbpi::Violation>& list, size_t i) {
  return i < list.size() ? list[i].code.c_str() : nullptr;
}

const char* nth_message(const std::vector<rbpi::Violation>& list, size_t i) {
  return i < list.size() ? list[i].message.c_str() : nullptr;
}

rbpi_status adopt_scenario(rbpi::Scenario s, rbpi_scenario** out) {
  auto handle = std::make_unique<rbpi_scenario>();
  handle->validation = rbpi::validate_scenario(s);
  handle->digest = s.digest();
  handle->scenario = std::move(s);
  *out = handle.release();
  return RBPI_OK;
}

}  // namespace

extern "C" {

const char* rbpi_last_error(void) { return g_last_error.c_str(); }

const char* rbpi_version(void) { return RBPI_VERSION_STRING; }

const char* rbpi_status_name(rbpi_status status) {
  switch (status) {
    case RBPI_OK:
      return "ok";
    case RBPI_INVALID_ARGUMENT:
      return "invalid-argument";
    case RBPI_PARSE:
      return "parse";
    case RBPI_VALIDATION:
      return "validation";
    case RBPI_NO_ROUTE:
      return "no-route";
    case RBPI_LENGTH:
      return "length";
    case RBPI_FIELD:
      return "field";
    case RBPI_CHECKSUM:
      return "checksum";
    case RBPI_IO:
      return "io";
    case RBPI_INTERNAL:
      return "internal";
  }
  return "unknown";
}

rbpi_status rbpi_encode_datagram(const rbpi_datagram* header, uint8_t out[RBPI_DATAGRAM_SIZE]) {
  if (header == nullptr || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto bytes = rbpi::codec::encode_datagram(to_cpp(*header));
    std::memcpy(out, bytes.data(), bytes.size());
    return RBPI_OK;
  });
}

rbpi_status rbpi_decode_datagram(const uint8_t* bytes, size_t length, rbpi_datagram* out) {
  if ((bytes == nullptr && length > 0) || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = to_c(rbpi::codec::decode_datagram({bytes, length}));
    return RBPI_OK;
  });
}

rbpi_status rbpi_encode_segment(const rbpi_segment* header, uint8_t out[RBPI_SEGMENT_SIZE]) {
  if (header == nullptr || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto bytes = rbpi::codec::encode_segment(to_cpp(*header));
    std::memcpy(out, bytes.data(), bytes.size());
    return RBPI_OK;
  });
}

rbpi_status rbpi_decode_segment(const uint8_t* bytes, size_t length, rbpi_segment* out) {
  if ((bytes == nullptr && length > 0) || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = to_c(rbpi::codec::decode_segment({bytes, length}));
    return RBPI_OK;
  });
}

uint16_t rbpi_checksum16(const uint8_t* bytes, size_t length) {
  if (bytes == nullptr) length = 0;
  return rbpi::codec::checksum16({bytes, length});
}

rbpi_status rbpi_parse_address(const char* text, uint32_t* out) {
  if (text == nullptr || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  auto a = rbpi::parse_address(text);
  if (!a) return fail(RBPI_PARSE, std::string("malformed address '") + text + "'");
  *out = *a;
  return RBPI_OK;
}

rbpi_status rbpi_parse_strategy(const char* text, rbpi_strategy* out) {
  if (text == nullptr || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  auto s = rbpi::strategy_from_name(text);
  if (!s) return fail(RBPI_PARSE, std::string("unknown strategy '") + text + "' (expected rip, ospf or bgp)");
  *out = static_cast<rbpi_strategy>(*s);
  return RBPI_OK;
}

const char* rbpi_strategy_name(rbpi_strategy strategy) {
  if (strategy < RBPI_STRATEGY_RIP || strategy > RBPI_STRATEGY_BGP) return "unknown";
  return rbpi::strategy_name(static_cast<rbpi::Strategy>(strategy));
}

rbpi_status rbpi_scenario_load(const char* path, rbpi_scenario** out) {
  if (path == nullptr || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    rbpi::Scenario s;
    try {
      s = rbpi::load_scenario(path);
    } catch (const rbpi::ScenarioParseError& e) {
      const std::string what = e.what();
      return fail(what.rfind("cannot read", 0) == 0 ? RBPI_IO : RBPI_PARSE, what);
    }
    return adopt_scenario(std::move(s), out);
  });
}

rbpi_status rbpi_scenario_parse(const char* text, size_t length, rbpi_scenario** out) {
  if ((text == nullptr && length > 0) || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { return adopt_scenario(rbpi::parse_scenario({text, length}), out); });
}

void rbpi_scenario_free(rbpi_scenario* scenario) { delete scenario; }

size_t rbpi_scenario_violation_count(const rbpi_scenario* s) {
  return s ? s->validation.violations.size() : 0;
}
const char* rbpi_scenario_violation_code(const rbpi_scenario* s, size_t i) {
  return s ? nth_code(s->validation.violations, i) : nullptr;
}
const char* rbpi_scenario_violation_message(const rbpi_scenario* s, size_t i) {
  return s ? nth_message(s->validation.violations, i) : nullptr;
}
size_t rbpi_scenario_warning_count(const rbpi_scenario* s) { return s ? s->validation.warnings.size() : 0; }
const char* rbpi_scenario_warning_code(const rbpi_scenario* s, size_t i) {
  return s ? nth_code(s->validation.warnings, i) : nullptr;
}
const char* rbpi_scenario_warning_message(const rbpi_scenario* s, size_t i) {
  return s ? nth_message(s->validation.warnings, i) : nullptr;
}
uint64_t rbpi_scenario_seed(const rbpi_scenario* s) { return s ? s->scenario.seed : 0; }
rbpi_strategy rbpi_scenario_strategy(const rbpi_scenario* s) {
  return s ? static_cast<rbpi_strategy>(s->scenario.strategy) : RBPI_STRATEGY_BGP;
}
const char* rbpi_scenario_name(const rbpi_scenario* s) { return s ? s->scenario.name.c_str() : nullptr; }

const char* rbpi_scenario_digest(const rbpi_scenario* s) { return s ? s->digest.c_str() : nullptr; }

rbpi_status rbpi_run(const rbpi_scenario* scenario, const rbpi_run_options* options, rbpi_report** out) {
  if (scenario == nullptr || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (!scenario->validation.ok()) {
    return fail(RBPI_VALIDATION, std::to_string(scenario->validation.violations.size()) +
                                     " validation violation(s); first: " +
                                     scenario->validation.violations.front().code);
  }
  return guarded([&] {
    std::optional<std::uint64_t> seed;
    std::optional<rbpi::SimTime> until;
    if (options != nullptr) {
      if (!options->use_scenario_seed) seed = options->seed;
      if (options->until_hours > 0) until = rbpi::SimTime::from_hours(options->until_hours);
    }
    const auto start = std::chrono::steady_clock::now();
    rbpi::Simulation sim(scenario->scenario, seed, until);
    sim.run();
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto handle = std::make_unique<rbpi_report>();
    handle->report = rbpi::make_report(scenario->scenario, sim, wall);
    handle->object = rbpi::render_object(handle->report);
    handle->table = rbpi::render_table(handle->report);
    handle->body = rbpi::render_body(handle->report);
    handle->summary = rbpi::summary_line(handle->report);
    handle->digest = rbpi::body_digest(handle->report);
    *out = handle.release();
    return RBPI_OK;
  });
}

void rbpi_report_free(rbpi_report* report) { delete report; }

const char* rbpi_report_render(const rbpi_report* r, rbpi_report_format format) {
  if (r == nullptr) return nullptr;
  return format == RBPI_FORMAT_TABLE ? r->table.c_str() : r->object.c_str();
}
const char* rbpi_report_body(const rbpi_report* r) { return r ? r->body.c_str() : nullptr; }
const char* rbpi_report_summary(const rbpi_report* r) { return r ? r->summary.c_str() : nullptr; }
const char* rbpi_report_digest(const rbpi_report* r) { return r ? r->digest.c_str() : nullptr; }
double rbpi_report_wall_clock(const rbpi_report* r) { return r ? r->report.wall_clock_seconds : 0.0; }
int rbpi_report_ledger_balanced(const rbpi_report* r) {
  if (r == nullptr) return 0;
  const rbpi::Metrics& m = r->report.metrics;
  return m.ledger.balanced() && m.ledger_balanced_every_event ? 1 : 0;
}

rbpi_status rbpi_route_query(const rbpi_scenario* scenario, uint32_t source, uint32_t destination,
                             int64_t payload_kg, rbpi_strategy strategy, rbpi_route** out) {
  if (scenario == nullptr || out == nullptr) return fail(RBPI_INVALID_ARGUMENT, "null argument");
  if (strategy < RBPI_STRATEGY_RIP || strategy > RBPI_STRATEGY_BGP) {
    return fail(RBPI_INVALID_ARGUMENT, "unknown strategy");
  }
  *out = nullptr;
  if (!scenario->validation.ok()) {
    return fail(RBPI_VALIDATION, "scenario has validation violations");
  }
  if (payload_kg < 0 || payload_kg > 0xFFFF) return fail(RBPI_INVALID_ARGUMENT, "payload must lie in [0, 65535] kg");
  return guarded([&] {
    auto result = rbpi::query_route(scenario->scenario, source, destination, payload_kg,
                                    static_cast<rbpi::Strategy>(strategy));
    if (!result) {
      return fail(RBPI_NO_ROUTE, "no-route from " + rbpi::format_address(source) + " to " +
                                     rbpi::format_address(destination));
    }
    *out = new rbpi_route{std::move(*result)};
    return RBPI_OK;
  });
}

void rbpi_route_free(rbpi_route* route) { delete route; }
size_t rbpi_route_length(const rbpi_route* r) { return r ? r->result.path.size() : 0; }
uint32_t rbpi_route_node(const rbpi_route* r, size_t i) {
  return r && i < r->result.path.size() ? r->result.path[i] : 0;
}
uint32_t rbpi_route_hop_count(const rbpi_route* r) { return r ? r->result.hop_count : 0; }
int64_t rbpi_route_min_free_capacity(const rbpi_route* r) { return r ? r->result.min_free_capacity : 0; }
int rbpi_route_capacity_shortfall(const rbpi_route* r) { return r && r->result.capacity_shortfall ? 1 : 0; }

}  // extern "C"
