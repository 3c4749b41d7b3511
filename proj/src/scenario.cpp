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

#include "rbpi/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rbpi {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioParseError(where + ": " + what);
}

const json* optional_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

const json& required_field(const json& obj, const char* key, const std::string& where) {
  const json* v = optional_field(obj, key);
  if (v == nullptr) fail(where, std::string("missing required field '") + key + "'");
  return *v;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

std::int64_t as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint32_t as_id(const json& v, const std::string& where) {
  const std::int64_t i = as_integer(v, where);
  if (i < 0 || i > 0xFFFFFFFFll) fail(where, "expected an unsigned 32-bit id");
  return static_cast<std::uint32_t>(i);
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where, "expected true or false");
  return v.get<bool>();
}

const std::string& as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get_ref<const std::string&>();
}

Address as_address(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    const std::int64_t i = v.get<std::int64_t>();
    if (i < 0 || i > 0xFFFFFFFFll) fail(where, "address out of 32-bit range");
    return static_cast<Address>(i);
  }
  if (v.is_string()) {
    if (auto a = parse_address(v.get<std::string>())) return *a;
  }
  fail(where, "expected an address (\"domain:local\" or integer)");
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  const json* v = optional_field(obj, key);
  return v ? as_number(*v, where + "." + key) : fallback;
}

const json& as_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array");
  return v;
}

void parse_params(const json& p, SimParams& out) {
  const std::string where = "params";
  if (!p.is_object()) fail(where, "expected an object");
  static const std::set<std::string> known = {
      "pallet_mass_kg", "detection_probability", "default_occupancy_threshold", "capacity_window_h",
      "table_exchange_interval_h", "max_unit_kg", "loss_timeout_fraction", "min_loss_timeout_h",
      "loss_scan_interval_h", "max_recoveries", "refuel_delay_h", "handling_delay_h", "reprint_delay_h",
      "reorder_delay_h", "transit_damage_probability", "power_tolerance_h"};
  for (const auto& [key, value] : p.items()) {
    if (known.count(key) == 0) fail(where, "unknown parameter '" + key + "'");
  }
  if (const json* v = optional_field(p, "pallet_mass_kg")) out.pallet_mass = as_integer(*v, where + ".pallet_mass_kg");
  if (const json* v = optional_field(p, "max_unit_kg")) out.max_unit = as_integer(*v, where + ".max_unit_kg");
  if (const json* v = optional_field(p, "max_recoveries")) {
    const std::int64_t r = as_integer(*v, where + ".max_recoveries");
    if (r < 0) fail(where + ".max_recoveries", "must be non-negative");
    out.max_recoveries = static_cast<std::uint32_t>(r);
  }
  out.detection_probability = number_or(p, "detection_probability", out.detection_probability, where);
  out.default_occupancy_threshold =
      number_or(p, "default_occupancy_threshold", out.default_occupancy_threshold, where);
  out.capacity_window_h = number_or(p, "capacity_window_h", out.capacity_window_h, where);
  out.table_exchange_interval_h = number_or(p, "table_exchange_interval_h", out.table_exchange_interval_h, where);
  out.loss_timeout_fraction = number_or(p, "loss_timeout_fraction", out.loss_timeout_fraction, where);
  out.min_loss_timeout_h = number_or(p, "min_loss_timeout_h", out.min_loss_timeout_h, where);
  out.loss_scan_interval_h = number_or(p, "loss_scan_interval_h", out.loss_scan_interval_h, where);
  out.refuel_delay_h = number_or(p, "refuel_delay_h", out.refuel_delay_h, where);
  out.handling_delay_h = number_or(p, "handling_delay_h", out.handling_delay_h, where);
  out.reprint_delay_h = number_or(p, "reprint_delay_h", out.reprint_delay_h, where);
  out.reorder_delay_h = number_or(p, "reorder_delay_h", out.reorder_delay_h, where);
  out.transit_damage_probability =
      number_or(p, "transit_damage_probability", out.transit_damage_probability, where);
  out.power_tolerance_h = number_or(p, "power_tolerance_h", out.power_tolerance_h, where);
}

PiNode parse_node(const json& n, const std::string& where, const SimParams& params) {
  if (!n.is_object()) fail(where, "expected an object");
  PiNode node;
  node.id = as_id(required_field(n, "id", where), where + ".id");
  node.address = as_address(required_field(n, "address", where), where + ".address");
  node.storage_capacity = as_integer(required_field(n, "storage_capacity_kg", where), where + ".storage_capacity_kg");
  node.occupancy_threshold = number_or(n, "occupancy_threshold", params.default_occupancy_threshold, where);
  if (const json* d = optional_field(n, "domain")) {
    node.domain = as_id(*d, where + ".domain");
  } else {
    node.domain = address_domain(node.address);
  }
  if (const json* caps = optional_field(n, "capabilities")) {
    for (const json& c : as_array(*caps, where + ".capabilities")) {
      const std::string& name = as_string(c, where + ".capabilities");
      auto cap = capability_from_name(name);
      if (!cap) fail(where + ".capabilities", "unknown capability '" + name + "'");
      node.capabilities.set(*cap);
    }
  }
  return node;
}

Leg parse_leg(const json& l, const std::string& where) {
  if (!l.is_object()) fail(where, "expected an object");
  Leg leg;
  leg.from = as_id(required_field(l, "from", where), where + ".from");
  leg.to = as_id(required_field(l, "to", where), where + ".to");
  leg.depart = SimTime::from_hours(as_number(required_field(l, "depart_h", where), where + ".depart_h"));
  return leg;
}

MoverSpec parse_mover(const json& m, const std::string& where) {
  if (!m.is_object()) fail(where, "expected an object");
  MoverSpec mover;
  mover.id = as_id(required_field(m, "id", where), where + ".id");
  mover.capacity = as_integer(required_field(m, "capacity_kg", where), where + ".capacity_kg");
  mover.tank_range_km = as_number(required_field(m, "tank_range_km", where), where + ".tank_range_km");
  mover.fuel_km = number_or(m, "fuel_km", mover.tank_range_km, where);
  mover.speed_factor = number_or(m, "speed_factor", 1.0, where);
  const json& legs = as_array(required_field(m, "schedule", where), where + ".schedule");
  for (std::size_t i = 0; i < legs.size(); ++i) {
    mover.legs.push_back(parse_leg(legs[i], where + ".schedule[" + std::to_string(i) + "]"));
  }
  if (const json* s = optional_field(m, "start_node")) {
    mover.start_node = as_id(*s, where + ".start_node");
  } else if (!mover.legs.empty()) {
    mover.start_node = mover.legs.front().from;
  } else {
    fail(where, "a mover without schedule needs 'start_node'");
  }
  if (const json* r = optional_field(m, "repeat_every_h")) {
    mover.repeat_every = SimTime::from_hours(as_number(*r, where + ".repeat_every_h"));
  }
  return mover;
}

Shipment parse_shipment(const json& s, const std::string& where) {
  if (!s.is_object()) fail(where, "expected an object");
  Shipment sh;
  sh.id = as_id(required_field(s, "id", where), where + ".id");
  sh.source_address = as_address(required_field(s, "source", where), where + ".source");
  sh.destination_address = as_address(required_field(s, "destination", where), where + ".destination");
  sh.created_at = SimTime::from_hours(number_or(s, "release_h", 0.0, where));
  sh.deadline = SimTime::from_hours(as_number(required_field(s, "deadline_h", where), where + ".deadline_h"));
  sh.budget = number_or(s, "budget", 0.0, where);

  std::uint8_t treatment = 0;
  if (const json* t = optional_field(s, "treatment")) {
    const std::string& name = as_string(*t, where + ".treatment");
    if (name == "none") treatment = 0;
    else if (name == "temperature") treatment = 1;
    else if (name == "fragile") treatment = 2;
    else if (name == "live_animal") treatment = 3;
    else fail(where + ".treatment", "expected none|temperature|fragile|live_animal");
  }
  std::int64_t urgency = 0;
  if (const json* u = optional_field(s, "urgency")) {
    urgency = as_integer(*u, where + ".urgency");
    if (urgency < 0 || urgency > 15) fail(where + ".urgency", "must lie in [0, 15]");
  }
  sh.treatment = codec::make_traffic_class(static_cast<codec::Treatment>(treatment),
                                           static_cast<std::uint8_t>(urgency));
  if (const json* f = optional_field(s, "flow_label")) {
    const std::int64_t v = as_integer(*f, where + ".flow_label");
    if (v < 0 || v > 0xFFFFFFFFll) fail(where + ".flow_label", "out of range");
    sh.flow_label = static_cast<std::uint32_t>(v);
  }
  if (const json* c = optional_field(s, "container")) {
    const std::string& name = as_string(*c, where + ".container");
    if (name == "disposable") sh.container_version = codec::kVersionDisposable;
    else if (name == "reusable") sh.container_version = codec::kVersionReusable;
    else fail(where + ".container", "expected disposable|reusable");
  }
  if (const json* r = optional_field(s, "routing")) {
    const std::string& name = as_string(*r, where + ".routing");
    if (name == "connectionless") sh.connection_oriented = false;
    else if (name == "connection_oriented") sh.connection_oriented = true;
    else fail(where + ".routing", "expected connectionless|connection_oriented");
  }
  if (const json* h = optional_field(s, "hop_limit")) {
    const std::int64_t v = as_integer(*h, where + ".hop_limit");
    if (v < 0 || v > 255) fail(where + ".hop_limit", "must lie in [0, 255]");
    sh.hop_limit = static_cast<std::uint8_t>(v);
  }
  if (const json* a = optional_field(s, "ack")) sh.ack_requested = as_bool(*a, where + ".ack");
  if (const json* u = optional_field(s, "urgent")) sh.urgent = as_bool(*u, where + ".urgent");

  const json& items = as_array(required_field(s, "items", where), where + ".items");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string iw = where + ".items[" + std::to_string(i) + "]";
    const json& it = items[i];
    if (!it.is_object()) fail(iw, "expected an object");
    FreightItem item;
    item.id = as_id(required_field(it, "id", iw), iw + ".id");
    item.mass = as_integer(required_field(it, "mass_kg", iw), iw + ".mass_kg");
    if (const json* r = optional_field(it, "reproducible_3d")) item.reproducible_3d = as_bool(*r, iw + ".reproducible_3d");
    if (const json* p = optional_field(it, "requires_power")) item.requires_power = as_bool(*p, iw + ".requires_power");
    sh.items.push_back(item);
  }
  return sh;
}

}  // namespace

std::optional<Address> parse_address(std::string_view text) {
  auto parse_uint = [](std::string_view s, std::uint64_t limit) -> std::optional<std::uint64_t> {
    if (s.empty()) return std::nullopt;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v > limit) return std::nullopt;
    return v;
  };
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    auto d = parse_uint(text.substr(0, colon), 0xFFFF);
    auto l = parse_uint(text.substr(colon + 1), 0xFFFF);
    if (!d || !l) return std::nullopt;
    return make_address(static_cast<DomainId>(*d), static_cast<std::uint16_t>(*l));
  }
  if (auto v = parse_uint(text, 0xFFFFFFFFull)) return static_cast<Address>(*v);
  return std::nullopt;
}

std::string format_address(Address address) {
  return std::to_string(address_domain(address)) + ":" + std::to_string(address_local(address));
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Scenario::digest() const { return fnv1a_hex(canonical); }

Scenario parse_scenario(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(std::string("syntax error: ") + e.what());
  }
  if (!root.is_object()) fail("scenario", "top level must be an object");

  Scenario s;
  s.canonical = root.dump();
  if (const json* n = optional_field(root, "name")) s.name = as_string(*n, "name");
  if (const json* st = optional_field(root, "strategy")) {
    auto strategy = strategy_from_name(as_string(*st, "strategy"));
    if (!strategy) fail("strategy", "expected rip|ospf|bgp");
    s.strategy = *strategy;
  }
  if (const json* seed = optional_field(root, "seed")) {
    if (!seed->is_number_unsigned() && !seed->is_number_integer()) fail("seed", "expected an unsigned integer");
    s.seed = seed->get<std::uint64_t>();
  }
  if (const json* e = optional_field(root, "end_time_h")) s.end_time = SimTime::from_hours(as_number(*e, "end_time_h"));
  if (const json* p = optional_field(root, "params")) parse_params(*p, s.params);

  const json& graph = required_field(root, "graph", "scenario");
  if (!graph.is_object()) fail("graph", "expected an object");
  std::vector<PiNode> nodes;
  const json& jn = as_array(required_field(graph, "nodes", "graph"), "graph.nodes");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    nodes.push_back(parse_node(jn[i], "graph.nodes[" + std::to_string(i) + "]", s.params));
  }
  std::vector<RoadEdge> edges;
  if (const json* je = optional_field(graph, "edges")) {
    as_array(*je, "graph.edges");
    for (std::size_t i = 0; i < je->size(); ++i) {
      const std::string where = "graph.edges[" + std::to_string(i) + "]";
      const json& e = (*je)[i];
      if (!e.is_object()) fail(where, "expected an object");
      RoadEdge edge;
      edge.from = as_id(required_field(e, "from", where), where + ".from");
      edge.to = as_id(required_field(e, "to", where), where + ".to");
      edge.distance_km = as_number(required_field(e, "distance_km", where), where + ".distance_km");
      edge.speed_kmh = as_number(required_field(e, "speed_kmh", where), where + ".speed_kmh");
      edges.push_back(edge);
      const json* bidi = optional_field(e, "bidirectional");
      if (bidi != nullptr && as_bool(*bidi, where + ".bidirectional")) {
        edges.push_back({edge.to, edge.from, edge.distance_km, edge.speed_kmh});
      }
    }
  }
  std::vector<CarrierDomain> domains;
  if (const json* jd = optional_field(root, "domains")) {
    as_array(*jd, "domains");
    for (std::size_t i = 0; i < jd->size(); ++i) {
      const std::string where = "domains[" + std::to_string(i) + "]";
      const json& d = (*jd)[i];
      if (!d.is_object()) fail(where, "expected an object");
      CarrierDomain dom;
      dom.id = as_id(required_field(d, "id", where), where + ".id");
      for (const json& m : as_array(required_field(d, "members", where), where + ".members")) {
        dom.members.push_back(as_id(m, where + ".members"));
      }
      domains.push_back(std::move(dom));
    }
  }
  s.graph = RoadGraph(std::move(nodes), std::move(edges), std::move(domains));

  if (const json* jf = optional_field(root, "fleet")) {
    as_array(*jf, "fleet");
    for (std::size_t i = 0; i < jf->size(); ++i) {
      s.fleet.push_back(parse_mover((*jf)[i], "fleet[" + std::to_string(i) + "]"));
    }
  }
  if (const json* js = optional_field(root, "shipments")) {
    as_array(*js, "shipments");
    for (std::size_t i = 0; i < js->size(); ++i) {
      s.shipments.push_back(parse_shipment((*js)[i], "shipments[" + std::to_string(i) + "]"));
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioParseError("cannot read scenario file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::vector<Leg> expand_schedule(const MoverSpec& mover, SimTime end) {
  std::vector<Leg> out;
  if (mover.legs.empty()) return out;
  if (!mover.repeat_every || mover.repeat_every->ticks() <= 0) {
    for (const Leg& l : mover.legs) {
      if (l.depart < end) out.push_back(l);
    }
    return out;
  }
  for (SimTime offset; ; offset += *mover.repeat_every) {
    for (const Leg& l : mover.legs) {
      Leg shifted = l;
      shifted.depart = l.depart + offset;
      if (shifted.depart >= end) return out;
      out.push_back(shifted);
    }
  }
}

ValidationReport validate_scenario(const Scenario& s) {
  ValidationReport report = validate_graph(s.graph);
  const SimParams& p = s.params;
  auto prob = [&](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) report.add("E_PARAM_RANGE", std::string(name) + " must lie in [0, 1]");
  };
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0)) report.add("E_PARAM_RANGE", std::string(name) + " must be positive");
  };
  auto non_negative = [&](double v, const char* name) {
    if (!(v >= 0.0)) report.add("E_PARAM_RANGE", std::string(name) + " must be non-negative");
  };
  prob(p.detection_probability, "detection_probability");
  prob(p.transit_damage_probability, "transit_damage_probability");
  prob(p.loss_timeout_fraction, "loss_timeout_fraction");
  if (!(p.default_occupancy_threshold > 0 && p.default_occupancy_threshold <= 1)) {
    report.add("E_PARAM_RANGE", "default_occupancy_threshold must lie in (0, 1]");
  }
  positive(static_cast<double>(p.pallet_mass), "pallet_mass_kg");
  if (p.max_unit < 1 || p.max_unit > 0xFFFF) report.add("E_PARAM_RANGE", "max_unit_kg must lie in [1, 65535]");
  positive(p.capacity_window_h, "capacity_window_h");
  positive(p.table_exchange_interval_h, "table_exchange_interval_h");
  positive(p.loss_scan_interval_h, "loss_scan_interval_h");
  non_negative(p.min_loss_timeout_h, "min_loss_timeout_h");
  non_negative(p.refuel_delay_h, "refuel_delay_h");
  non_negative(p.handling_delay_h, "handling_delay_h");
  non_negative(p.reprint_delay_h, "reprint_delay_h");
  non_negative(p.reorder_delay_h, "reorder_delay_h");
  non_negative(p.power_tolerance_h, "power_tolerance_h");
  if (s.end_time.ticks() <= 0) report.add("E_PARAM_RANGE", "end_time_h must be positive");

  std::set<MoverId> mover_ids;
  Kilograms largest_mover = 0;
  for (const MoverSpec& m : s.fleet) {
    const std::string label = "mover " + std::to_string(m.id);
    largest_mover = std::max(largest_mover, m.capacity);
    if (!mover_ids.insert(m.id).second) report.add("E_FLEET_DUPLICATE_ID", label + " declared more than once");
    if (m.capacity <= 0) report.add("E_FLEET_CAPACITY", label + " capacity must be positive");
    if (!(m.tank_range_km > 0)) report.add("E_FLEET_FUEL", label + " tank_range_km must be positive");
    if (!(m.fuel_km >= 0 && m.fuel_km <= m.tank_range_km)) {
      report.add("E_FLEET_FUEL", label + " fuel_km must lie in [0, tank_range_km]");
    }
    if (!(m.speed_factor > 0)) report.add("E_FLEET_SPEED_FACTOR", label + " speed_factor must be positive");
    if (s.graph.find_node(m.start_node) == nullptr) {
      report.add("E_FLEET_START", label + " starts at missing node " + std::to_string(m.start_node));
    }
    NodeId at = m.start_node;
    for (std::size_t i = 0; i < m.legs.size(); ++i) {
      const Leg& l = m.legs[i];
      const std::string leg_label = label + " leg " + std::to_string(i);
      if (s.graph.find_edge(l.from, l.to) == nullptr) {
        report.add("E_SCHEDULE_EDGE", leg_label + " uses missing edge " + std::to_string(l.from) + "->" +
                                          std::to_string(l.to));
      }
      if (l.from != at) {
        report.add("E_SCHEDULE_CHAIN", leg_label + " departs from " + std::to_string(l.from) +
                                           " but the mover is at " + std::to_string(at));
      }
      if (l.depart.ticks() < 0 || (i > 0 && l.depart < m.legs[i - 1].depart)) {
        report.add("E_SCHEDULE_ORDER", leg_label + " departure times must be non-negative and non-decreasing");
      }
      at = l.to;
    }
    if (m.repeat_every && !m.legs.empty()) {
      if (m.legs.back().to != m.legs.front().from) {
        report.add("E_SCHEDULE_REPEAT", label + " repeating schedule must end where it starts");
      }
      if (*m.repeat_every <= m.legs.back().depart - m.legs.front().depart) {
        report.add("E_SCHEDULE_REPEAT", label + " repeat period must exceed the schedule span");
      }
    }
  }

  std::set<ShipmentId> shipment_ids;
  for (const Shipment& sh : s.shipments) {
    const std::string label = "shipment " + std::to_string(sh.id);
    if (!shipment_ids.insert(sh.id).second) report.add("E_SHIPMENT_DUPLICATE_ID", label + " declared more than once");
    const PiNode* src = s.graph.find_by_address(sh.source_address);
    const PiNode* dst = s.graph.find_by_address(sh.destination_address);
    if (src == nullptr) report.add("E_SHIPMENT_SOURCE", label + " source " + format_address(sh.source_address) + " is not a node address");
    if (dst == nullptr) {
      report.add("E_SHIPMENT_DESTINATION",
                 label + " destination " + format_address(sh.destination_address) + " is not a node address");
    }
    if (src != nullptr && src == dst) report.add("E_SHIPMENT_ENDPOINTS", label + " source equals destination");
    if (sh.items.empty()) report.add("E_SHIPMENT_EMPTY", label + " has no items");
    if (!(sh.deadline > sh.created_at)) report.add("E_SHIPMENT_DEADLINE", label + " deadline must follow release");
    if (sh.created_at.ticks() < 0) report.add("E_SHIPMENT_RELEASE", label + " release time is negative");
    if (sh.flow_label > codec::kMaxFlowLabel) report.add("E_SHIPMENT_FLOW_LABEL", label + " flow_label exceeds 20 bits");
    std::set<ItemId> item_ids;
    for (const FreightItem& item : sh.items) {
      const std::string il = label + " item " + std::to_string(item.id);
      if (!item_ids.insert(item.id).second) report.add("E_ITEM_DUPLICATE_ID", il + " declared more than once");
      if (item.mass <= 0) report.add("E_ITEM_MASS", il + " mass must be positive");
      if (item.mass > p.max_unit) {
        report.add("E_ITEM_UNSEGMENTABLE", il + " mass " + std::to_string(item.mass) + " kg exceeds max_unit_kg " +
                                               std::to_string(p.max_unit));
      }
    }
    if (s.strategy == Strategy::kOspf && src != nullptr && dst != nullptr && src->domain != dst->domain) {
      report.warn("W_OSPF_INTERDOMAIN", label + " crosses carrier domains, which the ospf strategy cannot route");
    }
  }
  if (!s.fleet.empty() && p.max_unit > largest_mover) {
    report.warn("W_MAX_UNIT_EXCEEDS_FLEET", "max_unit_kg exceeds every mover capacity; large containers may never move");
  }
  return report;
}

}  // namespace rbpi
