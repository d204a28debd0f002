#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rolab/engine.hpp"
#include "rolab/scenario.hpp"
#include "rolab/trace.hpp"

namespace rolab::metrics {

using proto::PacketKind;

/// Counters and derived metrics of one simulation run.
struct RunReport {
  std::string scenario_id;
  std::string protocol;
  std::uint64_t seed = 0;
  int nodes = 0;
  double speed = 0.0;
  double pause = 0.0;
  double duration = 0.0;

  std::uint64_t data_sent = 0;
  std::uint64_t data_delivered = 0;
  std::uint64_t bytes_delivered = 0;
  std::uint64_t data_transmissions = 0;
  /// Transmissions per control kind; every kind is present, zero included.
  std::map<PacketKind, std::uint64_t> control_counts;
  std::uint64_t gratuitous_rrep_transmissions = 0;
  std::map<std::string, std::uint64_t> drops;
  std::uint64_t local_repairs_started = 0;
  std::uint64_t local_repairs_succeeded = 0;
  /// One-way delay of each delivered packet, in delivery order.
  std::vector<double> delays;

  double throughput_bps = 0.0;
  double throughput_pps = 0.0;
  std::optional<double> mean_delay_s;
  std::optional<double> paper_ed_s;
  std::optional<double> nrl;
  double paper_routing_load = 0.0;

  std::uint64_t control_total() const;
  std::uint64_t control(PacketKind kind) const;
};

/// Counts the trace and fills in every derived field.
RunReport build_report(const sim::Trace& trace, const sim::ScenarioConfig& config,
                       const proto::EngineStats& stats = {});

/// bytes_delivered * 8 / duration. Throws ValidationError when duration <= 0.
double throughput(const RunReport& report);
/// Mean one-way delay; empty when nothing was delivered.
std::optional<double> end_to_end_delay(const RunReport& report);
/// data_sent * (2 * mean delay) / data_delivered; the round trip is taken as
/// twice the mean one-way delay.
std::optional<double> paper_end_to_end_delay(const RunReport& report);
/// Control transmissions per delivered packet; empty without deliveries.
std::optional<double> normalized_routing_load(const RunReport& report);
/// (control + data transmissions) - data packets sent.
double paper_routing_load(const RunReport& report);

std::string to_json(const RunReport& report);

/// Schema line written before the CSV header.
inline constexpr const char* kCsvSchema = "# schema: rolab-run-csv v1";
/// seed, scenario, protocol, nodes, speed, pause, throughput_bps,
/// mean_delay_s, nrl, rreq, rrep, rerr, hello, ack, then throughput_pps,
/// data_sent, data_delivered.
std::string csv_header();
std::string csv_row(const RunReport& report);

/// Fixed-format number for CSV and tables ("" for an empty optional).
std::string format_number(double value);
std::string format_number(const std::optional<double>& value);

}  // namespace rolab::metrics
