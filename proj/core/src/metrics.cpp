#include "rolab/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "rolab/error.hpp"

namespace rolab::metrics {

using sim::TraceEvent;

namespace {

constexpr PacketKind kControlKinds[] = {PacketKind::rreq, PacketKind::rrep, PacketKind::rerr, PacketKind::hello,
                                        PacketKind::ack};

}  // namespace

std::uint64_t RunReport::control_total() const {
  std::uint64_t sum = 0;
  for (const auto& [kind, count] : control_counts) sum += count;
  return sum;
}

std::uint64_t RunReport::control(PacketKind kind) const {
  auto it = control_counts.find(kind);
  return it == control_counts.end() ? 0 : it->second;
}

RunReport build_report(const sim::Trace& trace, const sim::ScenarioConfig& config, const proto::EngineStats& stats) {
  RunReport r;
  r.scenario_id = config.id;
  r.protocol = config.profile.name;
  r.seed = config.seed;
  r.nodes = config.node_count;
  r.speed = config.speed;
  r.pause = config.pause;
  r.duration = config.duration;
  for (PacketKind k : kControlKinds) r.control_counts[k] = 0;

  for (const auto& rec : trace.records()) {
    switch (rec.event) {
      case TraceEvent::transmit:
        if (rec.packet == PacketKind::data) {
          ++r.data_transmissions;
        } else {
          ++r.control_counts[rec.packet];
          if (rec.packet == PacketKind::rrep && rec.gratuitous) ++r.gratuitous_rrep_transmissions;
        }
        break;
      case TraceEvent::originate:
        if (rec.packet == PacketKind::data) ++r.data_sent;
        break;
      case TraceEvent::drop:
        ++r.drops[std::string(sim::to_string(rec.reason))];
        break;
      default:
        break;
    }
  }
  for (const auto& d : trace.deliveries()) {
    ++r.data_delivered;
    r.bytes_delivered += d.bytes;
    r.delays.push_back(d.receive_time - d.send_time);
  }
  r.local_repairs_started = stats.local_repairs_started;
  r.local_repairs_succeeded = stats.local_repairs_succeeded;

  r.throughput_bps = throughput(r);
  r.throughput_pps = static_cast<double>(r.data_delivered) / r.duration;
  r.mean_delay_s = end_to_end_delay(r);
  r.paper_ed_s = paper_end_to_end_delay(r);
  r.nrl = normalized_routing_load(r);
  r.paper_routing_load = paper_routing_load(r);
  return r;
}

double throughput(const RunReport& report) {
  if (!(report.duration > 0.0)) throw ValidationError("throughput: duration must be > 0");
  return static_cast<double>(report.bytes_delivered) * 8.0 / report.duration;
}

std::optional<double> end_to_end_delay(const RunReport& report) {
  if (report.delays.empty()) return std::nullopt;
  const double sum = std::accumulate(report.delays.begin(), report.delays.end(), 0.0);
  return sum / static_cast<double>(report.delays.size());
}

std::optional<double> paper_end_to_end_delay(const RunReport& report) {
  const auto mean = end_to_end_delay(report);
  if (!mean || report.data_delivered == 0) return std::nullopt;
  return static_cast<double>(report.data_sent) * (2.0 * *mean) / static_cast<double>(report.data_delivered);
}

std::optional<double> normalized_routing_load(const RunReport& report) {
  if (report.data_delivered == 0) return std::nullopt;
  return static_cast<double>(report.control_total()) / static_cast<double>(report.data_delivered);
}

double paper_routing_load(const RunReport& report) {
  return static_cast<double>(report.control_total() + report.data_transmissions) -
         static_cast<double>(report.data_sent);
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

}  // namespace

std::string to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario_id;
  j["protocol"] = r.protocol;
  j["seed"] = r.seed;
  j["nodes"] = r.nodes;
  j["speed"] = r.speed;
  j["pause"] = r.pause;
  j["duration"] = r.duration;
  j["data_sent"] = r.data_sent;
  j["data_delivered"] = r.data_delivered;
  j["bytes_delivered"] = r.bytes_delivered;
  j["data_transmissions"] = r.data_transmissions;
  nlohmann::ordered_json control;
  for (PacketKind k : kControlKinds) control[std::string(proto::to_string(k))] = r.control(k);
  j["control_counts"] = control;
  j["control_total"] = r.control_total();
  j["gratuitous_rrep_transmissions"] = r.gratuitous_rrep_transmissions;
  j["drops"] = r.drops;
  j["local_repairs"] = {{"started", r.local_repairs_started}, {"succeeded", r.local_repairs_succeeded}};
  j["throughput_bps"] = r.throughput_bps;
  j["throughput_pps"] = r.throughput_pps;
  j["mean_delay_s"] = optional_json(r.mean_delay_s);
  j["paper_ed_s"] = optional_json(r.paper_ed_s);
  j["nrl"] = optional_json(r.nrl);
  j["paper_routing_load"] = r.paper_routing_load;
  return j.dump(2) + "\n";
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string format_number(const std::optional<double>& value) { return value ? format_number(*value) : ""; }

std::string csv_header() {
  return "seed,scenario,protocol,nodes,speed,pause,throughput_bps,mean_delay_s,nrl,rreq,rrep,rerr,hello,ack,"
         "throughput_pps,data_sent,data_delivered";
}

std::string csv_row(const RunReport& r) {
  std::string row;
  row += std::to_string(r.seed) + ",";
  row += r.scenario_id + ",";
  row += r.protocol + ",";
  row += std::to_string(r.nodes) + ",";
  row += format_number(r.speed) + ",";
  row += format_number(r.pause) + ",";
  row += format_number(r.throughput_bps) + ",";
  row += format_number(r.mean_delay_s) + ",";
  row += format_number(r.nrl) + ",";
  for (PacketKind k : kControlKinds) row += std::to_string(r.control(k)) + ",";
  row += format_number(r.throughput_pps) + ",";
  row += std::to_string(r.data_sent) + ",";
  row += std::to_string(r.data_delivered);
  return row;
}

}  // namespace rolab::metrics
