#pragma once

// Command implementations behind the rolab CLI. Each cmd_* returns the
// process exit code and writes only to the given streams and output dir.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rolab/metrics.hpp"
#include "rolab/overhead_model.hpp"
#include "rolab/scenario.hpp"
#include "rolab/sensitivity.hpp"

namespace rolab::harness {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitRuntime = 3 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "ROLAB_OUT_DIR";

struct Options {
  std::optional<std::uint64_t> seed;
  /// aodv | dsr | dymo | custom:<profile.json>
  std::optional<std::string> protocol;
  std::optional<std::filesystem::path> out_dir;
  bool trace = false;
  std::optional<model::FormulaMode> formula_mode;
  bool allow_mobile = false;
  /// compare: derive the model shape from the scenario topology.
  bool fit = false;
  unsigned threads = 1;
};

/// --out, else $ROLAB_OUT_DIR, else ./rolab-out.
std::filesystem::path output_dir(const Options& options);
proto::ProtocolProfile resolve_protocol(const std::string& spec);
/// Applies --seed and --protocol to a loaded scenario.
sim::ScenarioConfig apply_options(sim::ScenarioConfig config, const Options& options);

// ------------------------------------------------------------ model rows

struct ModelRow {
  std::string label;
  model::NetworkShape shape;
  std::vector<model::MonitoredRoute> routes;
};

/// {"rows": [{"label", "n", "H", "p", "coverage": [C2, C3, C4],
///   "tier_neighbors": [...], "formula_mode", "routes": [{"links",
///   "lifetime", "interval"}]}]}; a bare array of rows is accepted too.
std::vector<ModelRow> parse_model_rows(std::string_view text);
std::vector<ModelRow> load_model_rows(const std::string& path);

/// ParamDelta from "dn=1,dH=0,dT=0.5,dt=0"; omitted components are zero.
sensitivity::ParamDelta parse_delta(std::string_view text);

/// Model shape read off a static topology: n = node count, H = BFS hop
/// distance source -> destination, N_j = nodes at BFS distance j from the
/// source (one extra tier kept for the hop difference), C_i = share of
/// nodes with exactly i neighbors, p = 1.
model::NetworkShape fit_shape_from_topology(const sim::ScenarioConfig& config, sim::NodeId source,
                                            sim::NodeId destination);

// ----------------------------------------------------------------- sweeps

enum class SweepAxis { pause, speed, scalability, traffic };

std::string_view to_string(SweepAxis axis);
SweepAxis sweep_axis_from_string(std::string_view text);

struct SweepSpec {
  std::string name = "sweep";
  SweepAxis axis = SweepAxis::scalability;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> protocols;
  sim::ScenarioConfig base;

  void validate() const;
};

/// {"name", "axis", "values", "seeds", "protocols", "base": "builtin:<name>" | path | {scenario}}.
/// A relative base path is taken from base_dir when one is given.
SweepSpec parse_sweep(std::string_view text, const std::filesystem::path& base_dir = {});
/// "builtin:scalability-sweep" or a sweep file path.
SweepSpec load_sweep(const std::string& spec);
SweepSpec bundled_sweep(std::string_view name);

/// The base scenario with one axis value, protocol and seed applied.
sim::ScenarioConfig sweep_point(const SweepSpec& spec, double value, const std::string& protocol,
                                 std::uint64_t seed);

struct SweepRow {
  double value = 0.0;
  std::string protocol;
  std::uint64_t seed = 0;
  metrics::RunReport report;
};

struct SweepOutcome {
  /// Ordered by (axis value, protocol, seed) whatever the completion order.
  std::vector<SweepRow> rows;
  /// Set when a run failed; rows then holds the runs that completed.
  std::optional<std::string> error;
};

SweepOutcome run_sweep(const SweepSpec& spec, unsigned threads = 1);
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);
/// Mean and sample standard deviation per (value, protocol) cell.
std::string sweep_summary_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

// --------------------------------------------------------------- commands

int cmd_model(const std::string& params_file, const Options& options, std::ostream& out, std::ostream& err);
int cmd_sensitivity(const std::string& params_file, const std::string& delta, const Options& options,
                    std::ostream& out, std::ostream& err);
int cmd_sim(const std::string& scenario, const Options& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& sweep, const Options& options, std::ostream& out, std::ostream& err);
/// `params_file` may be empty when options.fit is set.
int cmd_compare(const std::string& scenario, const std::string& params_file, const Options& options,
                std::ostream& out, std::ostream& err);
int cmd_scenario_dump(const std::string& scenario, const Options& options, std::ostream& out, std::ostream& err);

}  // namespace rolab::harness
