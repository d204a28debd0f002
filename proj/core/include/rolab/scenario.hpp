#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rolab/profile.hpp"
#include "rolab/scheduler.hpp"

namespace rolab::sim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;
};

double distance(Vec2 a, Vec2 b);

enum class Placement { grid, uniform_random, explicit_positions };

std::string_view to_string(Placement placement);
Placement placement_from_string(std::string_view text);

/// Ideal broadcast medium: unit-disk reachability, fixed per-hop latency
/// plus serialization delay, independent Bernoulli loss per receiver.
struct RadioModel {
  double range = 250.0;             ///< meters
  double per_hop_latency = 0.001;   ///< seconds
  double loss_probability = 0.0;
  double bandwidth_bps = 2e6;

  /// per_hop_latency + bits / bandwidth.
  double hop_delay(std::uint32_t bytes) const { return per_hop_latency + bytes * 8.0 / bandwidth_bps; }
  void validate() const;
};

/// Rectangular region whose nodes lose power at `start`. With `end` set
/// they come back (with empty routing state) at that time.
struct Blackout {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double start = 0.0;
  std::optional<double> end;

  bool contains(Vec2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

/// Constant-bit-rate flow. The first packet leaves at `start`, then one
/// every 1 / rate_pps until `stop` or until `packets` have been sent.
struct FlowSpec {
  NodeId source = 0;
  NodeId destination = 0;
  double start = 1.0;
  double stop = 0.0;  ///< 0 means the scenario duration
  double rate_pps = 4.0;
  std::uint32_t packet_bytes = 512;
  std::optional<std::uint32_t> packets;
};

/// Flows whose endpoints are drawn from the traffic stream.
struct RandomTraffic {
  int flows = 0;
  double rate_pps = 4.0;
  std::uint32_t packet_bytes = 512;
  double start = 1.0;
  double stop = 0.0;  ///< 0 means the scenario duration
};

struct ScenarioConfig {
  std::string id = "custom";
  double area_width = 1000.0;
  double area_height = 1000.0;
  int node_count = 0;
  Placement placement = Placement::uniform_random;
  int grid_columns = 0;       ///< 0: ceil(sqrt(node_count))
  double grid_spacing = 0.0;  ///< 0: spread over the area
  std::vector<Vec2> positions;  ///< explicit placement only

  RadioModel radio;
  double speed = 0.0;  ///< m/s; 0 disables mobility
  double pause = 0.0;  ///< seconds at each waypoint

  std::vector<Blackout> blackouts;
  std::map<NodeId, double> lifetimes;

  std::vector<FlowSpec> flows;
  RandomTraffic random_traffic;

  double duration = 100.0;
  std::uint64_t seed = 1;

  proto::ProtocolProfile profile = proto::aodv_profile();
  proto::ProtocolParams params;

  bool is_static() const { return speed == 0.0; }
  bool has_failures() const { return !blackouts.empty() || !lifetimes.empty(); }

  /// Throws ValidationError naming the violated field.
  void validate() const;
};

/// Names of the scenarios shipped with the library.
std::vector<std::string> bundled_scenario_names();
/// Throws ValidationError for an unknown name.
ScenarioConfig bundled_scenario(std::string_view name);

/// JSON codec. parse_* throw ValidationError with the offending field.
ScenarioConfig scenario_from_json(std::string_view text);
std::string scenario_to_json(const ScenarioConfig& config);
proto::ProtocolProfile profile_from_json(std::string_view text);
std::string profile_to_json(const proto::ProtocolProfile& profile);

/// Loads "builtin:<name>" or a JSON file path.
ScenarioConfig load_scenario(const std::string& spec);

}  // namespace rolab::sim
