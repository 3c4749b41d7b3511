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

#include "rbpi/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace rbpi {
namespace {

using nlohmann::json;

json counts_json(const Metrics& m) {
  json c = json::object();
  c["acks"] = m.acks;
  c["capacity_reports"] = m.capacity_reports;
  c["congested_arrivals"] = m.congested_arrivals;
  c["damaged_detected"] = m.damaged_detected;
  c["damaged_missed"] = m.damaged_missed;
  c["duplicates"] = m.duplicates;
  c["ece_flags"] = m.ece_flags;
  c["ecosystem_breaches"] = m.ecosystem_breaches;
  c["hold_signals"] = m.hold_signals;
  c["hop_limit_drops"] = m.hop_limit_drops;
  c["loads"] = m.loads;
  c["loss_withdrawals"] = m.loss_withdrawals;
  c["no_route_drops"] = m.no_route_drops;
  c["refuels"] = m.refuels;
  c["reorders"] = m.reorders;
  c["reprints"] = m.reprints;
  c["strandings"] = m.strandings;
  c["unloads"] = m.unloads;
  c["write_offs"] = m.write_offs;
  return c;
}

json body_json(const RunReport& r) {
  const Metrics& m = r.metrics;
  json body = json::object();
  body["artifact_version"] = r.artifact_version;
  body["config_digest"] = r.config_digest;
  body["scenario"] = r.scenario_name;
  body["seed"] = r.seed;
  body["strategy"] = strategy_name(r.strategy);

  json metrics = json::object();
  metrics["counts"] = counts_json(m);
  metrics["empty_run_ratio"] = m.empty_run_ratio();
  metrics["utilization"] = m.utilization();
  metrics["on_time_rate"] = m.on_time_rate();
  metrics["events_processed"] = m.events_processed;
  metrics["end_time_h"] = m.end_time.hours();

  json hist = json::object();
  for (const auto& [hops, n] : m.hop_histogram) hist[std::to_string(hops)] = n;
  metrics["hop_histogram"] = hist;

  metrics["ledger"] = {{"aboard_kg", m.ledger.aboard},
                       {"at_nodes_kg", m.ledger.at_nodes},
                       {"balanced", m.ledger.balanced()},
                       {"balanced_every_event", m.ledger_balanced_every_event},
                       {"delivered_kg", m.ledger.delivered},
                       {"dispatched_kg", m.ledger.dispatched},
                       {"withdrawn_kg", m.ledger.withdrawn}};
  metrics["segments"] = {{"delivered", m.segments_delivered},
                         {"dispatched", m.segments_dispatched},
                         {"in_flight", m.segments_in_flight},
                         {"written_off", m.segments_written_off}};
  metrics["traversals"] = {{"empty", m.empty_traversals},
                           {"total", m.traversals},
                           {"loaded_kg_km", m.loaded_kg_km},
                           {"capacity_kg_km", m.capacity_kg_km}};

  json shipments = json::array();
  for (const ShipmentOutcome& s : m.shipments) {
    json j = json::object();
    j["id"] = s.id;
    j["delivered"] = s.completed.has_value();
    j["lead_time_h"] = s.completed ? json((*s.completed - s.released).hours()) : json(nullptr);
    j["on_time"] = s.on_time();
    j["slots"] = s.slots;
    j["slots_delivered"] = s.slots_delivered;
    j["slots_written_off"] = s.slots_written_off;
    shipments.push_back(j);
  }
  metrics["shipments"] = shipments;
  body["metrics"] = metrics;
  return body;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

RunReport make_report(const Scenario& scenario, const Simulation& sim, double wall_clock_seconds) {
  RunReport r;
  r.artifact_version = RBPI_VERSION_STRING;
  r.scenario_name = scenario.name;
  r.config_digest = scenario.digest();
  r.seed = sim.seed();
  r.strategy = scenario.strategy;
  r.metrics = sim.metrics();
  r.wall_clock_seconds = wall_clock_seconds;
  return r;
}

std::string render_body(const RunReport& report) { return body_json(report).dump(); }

std::string render_object(const RunReport& report) {
  json doc = json::object();
  doc["body"] = body_json(report);
  doc["envelope"] = {{"wall_clock_s", report.wall_clock_seconds}};
  return doc.dump(2) + "\n";
}

std::string render_table(const RunReport& r) {
  const Metrics& m = r.metrics;
  std::ostringstream out;
  out << "# run\n"
      << "key,value\n"
      << "artifact_version," << r.artifact_version << "\n"
      << "scenario," << r.scenario_name << "\n"
      << "config_digest," << r.config_digest << "\n"
      << "seed," << r.seed << "\n"
      << "strategy," << strategy_name(r.strategy) << "\n"
      << "on_time_rate," << fmt_double(m.on_time_rate()) << "\n"
      << "utilization," << fmt_double(m.utilization()) << "\n"
      << "empty_run_ratio," << fmt_double(m.empty_run_ratio()) << "\n"
      << "end_time_h," << fmt_double(m.end_time.hours()) << "\n"
      << "\n# counts\n"
      << "counter,value\n";
  const json counts = counts_json(m);
  for (const auto& [key, value] : counts.items()) out << key << "," << value.dump() << "\n";
  out << "segments_dispatched," << m.segments_dispatched << "\n"
      << "segments_delivered," << m.segments_delivered << "\n"
      << "segments_written_off," << m.segments_written_off << "\n"
      << "segments_in_flight," << m.segments_in_flight << "\n"
      << "\n# ledger\n"
      << "dispatched_kg,at_nodes_kg,aboard_kg,delivered_kg,withdrawn_kg,balanced\n"
      << m.ledger.dispatched << "," << m.ledger.at_nodes << "," << m.ledger.aboard << "," << m.ledger.delivered
      << "," << m.ledger.withdrawn << "," << (m.ledger.balanced() && m.ledger_balanced_every_event ? 1 : 0)
      << "\n"
      << "\n# hop_histogram\n"
      << "hops,segments\n";
  for (const auto& [hops, n] : m.hop_histogram) out << hops << "," << n << "\n";
  out << "\n# shipments\n"
      << "id,delivered,lead_time_h,on_time,slots,slots_delivered,slots_written_off\n";
  for (const ShipmentOutcome& s : m.shipments) {
    out << s.id << "," << (s.completed ? 1 : 0) << ","
        << (s.completed ? fmt_double((*s.completed - s.released).hours()) : std::string()) << ","
        << (s.on_time() ? 1 : 0) << "," << s.slots << "," << s.slots_delivered << "," << s.slots_written_off << "\n";
  }
  return out.str();
}

std::string render(const RunReport& report, ReportFormat format) {
  return format == ReportFormat::kTable ? render_table(report) : render_object(report);
}

std::string body_digest(const RunReport& report) { return fnv1a_hex(render_body(report)); }

std::string summary_line(const RunReport& r) {
  const Metrics& m = r.metrics;
  std::ostringstream out;
  std::size_t delivered = 0;
  for (const ShipmentOutcome& s : m.shipments) delivered += s.completed ? 1 : 0;
  out << "scenario=" << r.scenario_name << " strategy=" << strategy_name(r.strategy) << " seed=" << r.seed
      << " shipments=" << delivered << "/" << m.shipments.size() << " on_time=" << fmt_double(m.on_time_rate())
      << " reorders=" << m.reorders << " reprints=" << m.reprints << " write_offs=" << m.write_offs
      << " holds=" << m.hold_signals << " ledger=" << (m.ledger.balanced() && m.ledger_balanced_every_event ? "ok" : "broken")
      << " digest=" << body_digest(r) << " wall_clock_s=" << fmt_double(r.wall_clock_seconds);
  return out.str();
}

}  // namespace rbpi
