#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "rolab/scenario.hpp"

namespace fixture {

using rolab::sim::FlowSpec;
using rolab::sim::Placement;
using rolab::sim::ScenarioConfig;

/// Static scenario with nodes at the given coordinates.
inline ScenarioConfig placed(const std::vector<rolab::sim::Vec2>& points, double width, double height,
                             const rolab::proto::ProtocolProfile& profile) {
  ScenarioConfig c;
  c.id = "fixture";
  c.area_width = width;
  c.area_height = height;
  c.node_count = static_cast<int>(points.size());
  c.placement = Placement::explicit_positions;
  c.positions = points;
  c.profile = profile;
  c.duration = 30.0;
  return c;
}

/// `count` nodes on a horizontal line, `spacing` meters apart.
inline ScenarioConfig line(int count, double spacing, const rolab::proto::ProtocolProfile& profile) {
  std::vector<rolab::sim::Vec2> points;
  for (int i = 0; i < count; ++i) points.push_back({i * spacing, 0.0});
  return placed(points, std::max(1.0, (count - 1) * spacing), 10.0, profile);
}

inline ScenarioConfig from_graph(const oracle::Graph& g, const rolab::proto::ProtocolProfile& profile) {
  std::vector<rolab::sim::Vec2> points;
  for (const auto& p : g.pos) points.push_back({p.x, p.y});
  auto c = placed(points, g.side, g.side, profile);
  c.radio.range = g.range;
  return c;
}

inline FlowSpec one_packet(rolab::sim::NodeId from, rolab::sim::NodeId to, double at = 1.0) {
  FlowSpec f;
  f.source = from;
  f.destination = to;
  f.start = at;
  f.packets = 1;
  return f;
}

}  // namespace fixture
