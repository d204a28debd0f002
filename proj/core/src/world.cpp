#include "rolab/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rolab/error.hpp"

namespace rolab::sim {

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

namespace {

std::vector<Vec2> place(const ScenarioConfig& cfg, Rng& rng) {
  std::vector<Vec2> out;
  const auto n = static_cast<std::size_t>(cfg.node_count);
  out.reserve(n);
  switch (cfg.placement) {
    case Placement::explicit_positions:
      out = cfg.positions;
      break;
    case Placement::grid: {
      const int cols = cfg.grid_columns > 0 ? cfg.grid_columns
                                            : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
      const int rows = static_cast<int>((n + cols - 1) / cols);
      const double dx = cfg.grid_spacing > 0.0 ? cfg.grid_spacing : (cols > 1 ? cfg.area_width / (cols - 1) : 0.0);
      const double dy = cfg.grid_spacing > 0.0 ? cfg.grid_spacing : (rows > 1 ? cfg.area_height / (rows - 1) : 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<double>(static_cast<int>(i) % cols);
        const auto r = static_cast<double>(static_cast<int>(i) / cols);
        out.push_back({c * dx, r * dy});
      }
      break;
    }
    case Placement::uniform_random:
      for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, cfg.area_width);
        const double y = rng.uniform(0.0, cfg.area_height);
        out.push_back({x, y});
      }
      break;
  }
  return out;
}

}  // namespace

World::World(const ScenarioConfig& config)
    : radio_(config.radio),
      width_(config.area_width),
      height_(config.area_height),
      speed_(config.speed),
      pause_(config.pause),
      blackouts_(config.blackouts),
      blackout_members_(config.blackouts.size()),
      blackout_resolved_(config.blackouts.size(), false),
      mobility_rng_(config.seed, Stream::mobility) {
  Rng placement_rng(config.seed, Stream::placement);
  const std::vector<Vec2> start = place(config, placement_rng);
  nodes_.resize(start.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    NodeState& n = nodes_[i];
    n.id = static_cast<NodeId>(i);
    n.speed = speed_;
    n.radio_range = radio_.range;
    n.leg = Leg{start[i], start[i], 0.0, 0.0, 0.0};
    if (auto it = config.lifetimes.find(n.id); it != config.lifetimes.end()) n.lifetime = it->second;
  }
  if (mobile()) {
    for (auto& n : nodes_) draw_leg(n, 0.0);
  } else {
    for (auto& n : nodes_) n.leg.resume = std::numeric_limits<double>::infinity();
  }
}

Vec2 World::random_point(Rng& rng) const {
  const double x = rng.uniform(0.0, width_);
  const double y = rng.uniform(0.0, height_);
  return {x, y};
}

void World::draw_leg(NodeState& n, double depart) {
  const Vec2 from = n.leg.to;
  const Vec2 to = random_point(mobility_rng_);
  const double travel = std::max(distance(from, to) / speed_, 1e-9);
  n.leg = Leg{from, to, depart, depart + travel, depart + travel + pause_};
}

Vec2 World::position(NodeId id, double t) const {
  const Leg& leg = nodes_.at(id).leg;
  if (t <= leg.depart) return leg.from;
  if (t >= leg.arrive) return leg.to;
  const double f = (t - leg.depart) / (leg.arrive - leg.depart);
  return {leg.from.x + f * (leg.to.x - leg.from.x), leg.from.y + f * (leg.to.y - leg.from.y)};
}

bool World::in_range(NodeId a, NodeId b, double now) const {
  return distance(position(a, now), position(b, now)) <= radio_.range;
}

std::vector<NodeId> World::neighbors(NodeId node, double now) const {
  std::vector<NodeId> out;
  if (!alive(node)) return out;
  const Vec2 here = position(node, now);
  for (const auto& other : nodes_) {
    if (other.id == node || !other.alive) continue;
    if (distance(here, position(other.id, now)) <= radio_.range) out.push_back(other.id);
  }
  return out;
}

double World::step_node(NodeId id, double now) {
  NodeState& n = nodes_.at(id);
  if (!mobile()) return n.leg.resume;
  while (n.leg.resume <= now) draw_leg(n, n.leg.resume);
  return n.leg.resume;
}

void World::step_mobility(double now) {
  for (auto& n : nodes_) step_node(n.id, now);
}

std::vector<std::pair<NodeId, bool>> World::apply_failures(double now) {
  for (std::size_t b = 0; b < blackouts_.size(); ++b) {
    if (!blackout_resolved_[b] && blackouts_[b].start <= now) {
      auto& members = blackout_members_[b];
      members.assign(nodes_.size(), false);
      for (const auto& n : nodes_) members[n.id] = blackouts_[b].contains(position(n.id, blackouts_[b].start));
      blackout_resolved_[b] = true;
    }
  }
  std::vector<std::pair<NodeId, bool>> changes;
  for (auto& n : nodes_) {
    bool dead = n.lifetime && *n.lifetime <= now;
    for (std::size_t b = 0; b < blackouts_.size() && !dead; ++b) {
      const Blackout& bo = blackouts_[b];
      const bool active = bo.start <= now && (!bo.end || now < *bo.end);
      dead = active && blackout_members_[b][n.id];
    }
    if (n.alive == dead) {
      n.alive = !dead;
      changes.emplace_back(n.id, n.alive);
    }
  }
  return changes;
}

std::vector<double> World::failure_times() const {
  std::vector<double> out;
  for (const auto& b : blackouts_) {
    out.push_back(b.start);
    if (b.end) out.push_back(*b.end);
  }
  for (const auto& n : nodes_) {
    if (n.lifetime) out.push_back(*n.lifetime);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace rolab::sim
