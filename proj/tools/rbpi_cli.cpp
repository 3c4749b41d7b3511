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

// rbpi: command-line front end over the shared library.

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rbpi/rbpi.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitInput = 2;

struct ScenarioHandle {
  rbpi_scenario* p = nullptr;
  ~ScenarioHandle() { rbpi_scenario_free(p); }
};

int exit_for(rbpi_status s) {
  switch (s) {
    case RBPI_OK:
      return kExitOk;
    case RBPI_PARSE:
    case RBPI_IO:
    case RBPI_INVALID_ARGUMENT:
    case RBPI_LENGTH:
    case RBPI_FIELD:
      return kExitInput;
    default:
      return kExitDomain;
  }
}

int report_error(rbpi_status s) {
  std::cerr << "error: " << rbpi_status_name(s) << ": " << rbpi_last_error() << "\n";
  return exit_for(s);
}

// Loads and prints diagnostics. Returns an exit code, 0 when usable.
int load(const std::string& path, ScenarioHandle& h, bool print_ok) {
  const rbpi_status s = rbpi_scenario_load(path.c_str(), &h.p);
  if (s != RBPI_OK) return report_error(s);
  for (size_t i = 0; i < rbpi_scenario_warning_count(h.p); ++i) {
    std::cerr << "warning " << rbpi_scenario_warning_code(h.p, i) << ": " << rbpi_scenario_warning_message(h.p, i)
              << "\n";
  }
  const size_t n = rbpi_scenario_violation_count(h.p);
  for (size_t i = 0; i < n; ++i) {
    std::cout << rbpi_scenario_violation_code(h.p, i) << ": " << rbpi_scenario_violation_message(h.p, i) << "\n";
  }
  if (n > 0) {
    std::cerr << path << ": " << n << " violation(s)\n";
    return kExitDomain;
  }
  if (print_ok) std::cout << "ok " << path << " digest=" << rbpi_scenario_digest(h.p) << "\n";
  return kExitOk;
}

// ---- codec -------------------------------------------------------------

const char* const kFlagNames[] = {"FIN", "SYN", "RST", "PSH", "ACK", "URG", "ECE", "CWR", "NS"};

std::string to_hex(const uint8_t* bytes, size_t n) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (size_t i = 0; i < n; ++i) {
    out += digits[bytes[i] >> 4];
    out += digits[bytes[i] & 0xF];
  }
  return out;
}

std::optional<std::vector<uint8_t>> from_hex(std::string text) {
  if (text.rfind("0x", 0) == 0) text = text.substr(2);
  if (text.size() % 2 != 0) return std::nullopt;
  std::vector<uint8_t> out;
  for (size_t i = 0; i < text.size(); i += 2) {
    auto nibble = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      if (c >= 'A' && c <= 'F') return c - 'A' + 10;
      return -1;
    };
    const int hi = nibble(text[i]);
    const int lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<uint8_t>(hi << 4 | lo));
  }
  return out;
}

std::string flags_text(uint16_t bits) {
  std::string out;
  for (int i = 8; i >= 0; --i) {
    if (bits & (1u << i)) {
      if (!out.empty()) out += ",";
      out += kFlagNames[i];
    }
  }
  return out;
}

std::optional<uint16_t> parse_flags(const std::string& text) {
  uint16_t bits = 0;
  std::stringstream ss(text);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    bool found = false;
    for (int i = 0; i < 9; ++i) {
      if (name == kFlagNames[i]) {
        bits |= static_cast<uint16_t>(1u << i);
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return bits;
}

std::optional<uint64_t> parse_number(const std::string& text, uint64_t max) {
  if (text.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 0);
  if (errno != 0 || *end != '\0' || text[0] == '-' || v > max) return std::nullopt;
  return v;
}

using FieldMap = std::map<std::string, std::string>;

std::optional<FieldMap> parse_fields(const std::vector<std::string>& args, std::string& error) {
  FieldMap fields;
  for (const std::string& a : args) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) {
      error = "expected field=value, got '" + a + "'";
      return std::nullopt;
    }
    fields[a.substr(0, eq)] = a.substr(eq + 1);
  }
  return fields;
}

// Pulls `name` out of `fields` into `out`. Returns false on a malformed value.
template <class T>
bool take(FieldMap& fields, const char* name, T& out, uint64_t max, std::string& error) {
  auto it = fields.find(name);
  if (it == fields.end()) return true;
  auto v = parse_number(it->second, max);
  if (!v) {
    error = std::string("bad value for ") + name + ": '" + it->second + "'";
    return false;
  }
  out = static_cast<T>(*v);
  fields.erase(it);
  return true;
}

bool take_address(FieldMap& fields, const char* name, uint32_t& out, std::string& error) {
  auto it = fields.find(name);
  if (it == fields.end()) return true;
  if (rbpi_parse_address(it->second.c_str(), &out) != RBPI_OK) {
    error = std::string("bad address for ") + name + ": '" + it->second + "'";
    return false;
  }
  fields.erase(it);
  return true;
}

void print_datagram(const rbpi_datagram& d) {
  std::cout << "version=" << unsigned(d.version) << "\n"
            << "traffic_class=" << unsigned(d.traffic_class) << "\n"
            << "flow_label=" << d.flow_label << "\n"
            << "payload_length=" << d.payload_length << "\n"
            << "next_header=" << unsigned(d.next_header) << "\n"
            << "hop_limit=" << unsigned(d.hop_limit) << "\n"
            << "source=" << d.source << "\n"
            << "destination=" << d.destination << "\n";
}

void print_segment(const rbpi_segment& s) {
  std::cout << "source_port=" << s.source_port << "\n"
            << "destination_port=" << s.destination_port << "\n"
            << "sequence_number=" << s.sequence_number << "\n"
            << "acknowledgement_number=" << s.acknowledgement_number << "\n"
            << "data_offset=" << unsigned(s.data_offset) << "\n"
            << "reserved=" << unsigned(s.reserved) << "\n"
            << "flags=" << flags_text(s.flags) << "\n"
            << "window_size=" << s.window_size << "\n"
            << "checksum=" << s.checksum << "\n"
            << "urgent_pointer=" << s.urgent_pointer << "\n"
            << "options=" << s.options << "\n";
}

int cmd_codec(const std::string& direction, const std::string& kind, const std::vector<std::string>& input) {
  const bool datagram = kind == "datagram";
  if (!datagram && kind != "segment") {
    std::cerr << "error: kind must be datagram or segment\n";
    return kExitInput;
  }
  if (direction == "decode") {
    if (input.size() != 1) {
      std::cerr << "error: decode takes exactly one hex string\n";
      return kExitInput;
    }
    auto bytes = from_hex(input[0]);
    if (!bytes) {
      std::cerr << "error: malformed hex input\n";
      return kExitInput;
    }
    if (datagram) {
      rbpi_datagram d{};
      const rbpi_status s = rbpi_decode_datagram(bytes->data(), bytes->size(), &d);
      if (s != RBPI_OK) return report_error(s);
      print_datagram(d);
    } else {
      rbpi_segment seg{};
      const rbpi_status s = rbpi_decode_segment(bytes->data(), bytes->size(), &seg);
      if (s != RBPI_OK) return report_error(s);
      print_segment(seg);
    }
    return kExitOk;
  }
  if (direction != "encode") {
    std::cerr << "error: direction must be encode or decode\n";
    return kExitInput;
  }

  std::string error;
  auto fields = parse_fields(input, error);
  bool ok = fields.has_value();
  if (datagram) {
    rbpi_datagram d{1, 0, 0, 0, 0, 0, 0, 0};
    ok = ok && take(*fields, "version", d.version, 0xFF, error) &&
         take(*fields, "traffic_class", d.traffic_class, 0xFF, error) &&
         take(*fields, "flow_label", d.flow_label, 0xFFFFFFFF, error) &&
         take(*fields, "payload_length", d.payload_length, 0xFFFF, error) &&
         take(*fields, "next_header", d.next_header, 0xFF, error) &&
         take(*fields, "hop_limit", d.hop_limit, 0xFF, error) && take_address(*fields, "source", d.source, error) &&
         take_address(*fields, "destination", d.destination, error);
    if (ok && !fields->empty()) {
      error = "unknown field '" + fields->begin()->first + "'";
      ok = false;
    }
    if (!ok) {
      std::cerr << "error: " << error << "\n";
      return kExitInput;
    }
    uint8_t out[RBPI_DATAGRAM_SIZE];
    const rbpi_status s = rbpi_encode_datagram(&d, out);
    if (s != RBPI_OK) return report_error(s);
    std::cout << to_hex(out, sizeof out) << "\n";
    return kExitOk;
  }

  rbpi_segment seg{0, 0, 0, 0, 6, 0, 0, 0, 0, 0, 0};
  if (ok) {
    if (auto it = fields->find("flags"); it != fields->end()) {
      auto bits = parse_flags(it->second);
      if (!bits) {
        error = "bad flags '" + it->second + "'";
        ok = false;
      } else {
        seg.flags = *bits;
        fields->erase(it);
      }
    }
    fields->erase("checksum");
  }
  ok = ok && take(*fields, "source_port", seg.source_port, 0xFFFF, error) &&
       take(*fields, "destination_port", seg.destination_port, 0xFFFF, error) &&
       take(*fields, "sequence_number", seg.sequence_number, 0xFFFFFFFF, error) &&
       take(*fields, "acknowledgement_number", seg.acknowledgement_number, 0xFFFFFFFF, error) &&
       take(*fields, "data_offset", seg.data_offset, 0xFF, error) &&
       take(*fields, "reserved", seg.reserved, 0xFF, error) &&
       take(*fields, "window_size", seg.window_size, 0xFFFF, error) &&
       take(*fields, "urgent_pointer", seg.urgent_pointer, 0xFFFF, error) &&
       take(*fields, "options", seg.options, 0xFFFFFFFF, error);
  if (ok && !fields->empty()) {
    error = "unknown field '" + fields->begin()->first + "'";
    ok = false;
  }
  if (!ok) {
    std::cerr << "error: " << error << "\n";
    return kExitInput;
  }
  uint8_t out[RBPI_SEGMENT_SIZE];
  const rbpi_status s = rbpi_encode_segment(&seg, out);
  if (s != RBPI_OK) return report_error(s);
  std::cout << to_hex(out, sizeof out) << "\n";
  return kExitOk;
}

// ---- run / route -------------------------------------------------------

int cmd_run(const std::string& path, std::optional<uint64_t> seed, const std::string& out_path,
            const std::string& format, std::optional<double> until) {
  ScenarioHandle h;
  if (int rc = load(path, h, false); rc != kExitOk) return rc;
  rbpi_run_options opts{};
  opts.use_scenario_seed = seed ? 0 : 1;
  opts.seed = seed.value_or(0);
  opts.until_hours = until.value_or(0);
  rbpi_report* report = nullptr;
  const rbpi_status s = rbpi_run(h.p, &opts, &report);
  if (s != RBPI_OK) return report_error(s);
  const char* text = rbpi_report_render(report, format == "table" ? RBPI_FORMAT_TABLE : RBPI_FORMAT_OBJECT);
  int rc = kExitOk;
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    std::cerr << rbpi_report_summary(report) << "\n";
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    out.flush();
    if (!out) {
      std::cerr << "error: io: cannot write report to '" << out_path << "'\n";
      rc = kExitInput;
    } else {
      std::cout << rbpi_report_summary(report) << "\n";
    }
  }
  rbpi_report_free(report);
  return rc;
}

int cmd_route(const std::string& path, const std::string& src, const std::string& dst, int64_t payload,
              const std::string& strategy_text) {
  ScenarioHandle h;
  if (int rc = load(path, h, false); rc != kExitOk) return rc;
  uint32_t a = 0;
  uint32_t b = 0;
  if (rbpi_status s = rbpi_parse_address(src.c_str(), &a); s != RBPI_OK) return report_error(s);
  if (rbpi_status s = rbpi_parse_address(dst.c_str(), &b); s != RBPI_OK) return report_error(s);
  rbpi_strategy strategy = rbpi_scenario_strategy(h.p);
  if (!strategy_text.empty()) {
    if (rbpi_status s = rbpi_parse_strategy(strategy_text.c_str(), &strategy); s != RBPI_OK) {
      return report_error(s);
    }
  }
  rbpi_route* route = nullptr;
  const rbpi_status s = rbpi_route_query(h.p, a, b, payload, strategy, &route);
  if (s == RBPI_NO_ROUTE) {
    std::cout << "no-route\n";
    std::cerr << rbpi_last_error() << "\n";
    return kExitDomain;
  }
  if (s != RBPI_OK) return report_error(s);
  std::cout << "path:";
  for (size_t i = 0; i < rbpi_route_length(route); ++i) {
    std::cout << (i == 0 ? " " : " -> ") << rbpi_route_node(route, i);
  }
  std::cout << "\nhops: " << rbpi_route_hop_count(route) << "\n"
            << "min_free_capacity_kg: " << rbpi_route_min_free_capacity(route) << "\n";
  if (rbpi_route_capacity_shortfall(route)) std::cout << "capacity_shortfall: true\n";
  rbpi_route_free(route);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Road-based physical internet simulator"};
  app.set_version_flag("--version", std::string(rbpi_version()));
  app.require_subcommand(1);

  std::string scenario_path;

  auto* validate = app.add_subcommand("validate", "Check a scenario and list violations");
  validate->add_option("scenario", scenario_path, "Scenario file")->required();

  auto* run = app.add_subcommand("run", "Run a scenario and write the report");
  std::optional<uint64_t> seed;
  std::string out_path;
  std::string format = "obj";
  std::optional<double> until;
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--seed", seed, "Random seed (default: the scenario's)");
  run->add_option("--out", out_path, "Report path (default: stdout)");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"obj", "table"}));
  run->add_option("--until", until, "Stop at this simulation hour")->check(CLI::PositiveNumber);

  auto* route = app.add_subcommand("route", "Query a path after table convergence at time zero");
  std::string src;
  std::string dst;
  int64_t payload = 0;
  std::string strategy;
  route->add_option("scenario", scenario_path, "Scenario file")->required();
  route->add_option("source", src, "Source address (domain:local)")->required();
  route->add_option("destination", dst, "Destination address (domain:local)")->required();
  route->add_option("payload_kg", payload, "Payload mass")->required()->check(CLI::Range(int64_t{0}, int64_t{65535}));
  route->add_option("--strategy", strategy, "rip, ospf or bgp (default: the scenario's)")
      ->check(CLI::IsMember({"rip", "ospf", "bgp"}));

  auto* codec = app.add_subcommand("codec", "Encode or decode a header");
  std::string direction;
  std::string kind;
  std::vector<std::string> input;
  codec->add_option("direction", direction, "encode or decode")->required()->check(CLI::IsMember({"encode", "decode"}));
  codec->add_option("kind", kind, "datagram or segment")->required()->check(CLI::IsMember({"datagram", "segment"}));
  codec->add_option("input", input, "Hex string (decode) or field=value pairs (encode)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (*validate) {
    ScenarioHandle h;
    return load(scenario_path, h, true);
  }
  if (*run) return cmd_run(scenario_path, seed, out_path, format, until);
  if (*route) return cmd_route(scenario_path, src, dst, payload, strategy);
  if (*codec) return cmd_codec(direction, kind, input);
  return kExitInput;
}
