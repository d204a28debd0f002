#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rolab/rng.hpp"
#include "rolab/scenario.hpp"

namespace rolab::sim {

/// One straight-line random-waypoint leg followed by a pause.
struct Leg {
  Vec2 from;
  Vec2 to;
  double depart = 0.0;
  double arrive = 0.0;
  double resume = 0.0;  ///< arrive + pause: when the next leg is drawn
};

struct NodeState {
  NodeId id = 0;
  Leg leg;
  double speed = 0.0;
  bool alive = true;
  std::optional<double> lifetime;
  double radio_range = 0.0;
};

/// Node placement, unit-disk connectivity, random-waypoint mobility and
/// failure bookkeeping. Holds no event queue; the simulation drives it.
class World {
 public:
  explicit World(const ScenarioConfig& config);

  std::size_t size() const { return nodes_.size(); }
  const NodeState& node(NodeId id) const { return nodes_.at(id); }
  const RadioModel& radio() const { return radio_; }

  /// Position at time t on the node's current leg. Legs must have been
  /// advanced to t with step_mobility / step_node.
  Vec2 position(NodeId id, double t) const;
  bool alive(NodeId id) const { return nodes_.at(id).alive; }
  void set_alive(NodeId id, bool alive) { nodes_.at(id).alive = alive; }

  bool in_range(NodeId a, NodeId b, double now) const;
  /// Alive nodes within radio range of `node`, ascending ids. Empty when
  /// `node` itself is dead.
  std::vector<NodeId> neighbors(NodeId node, double now) const;

  bool mobile() const { return speed_ > 0.0; }
  /// Draws new waypoints for every node whose pause has ended by `now`.
  void step_mobility(double now);
  /// Same for a single node. Returns the time its next leg is due.
  double step_node(NodeId id, double now);

  /// Re-evaluates lifetimes and blackouts at `now`, updates alive flags and
  /// returns the nodes whose status changed (id, now_alive).
  std::vector<std::pair<NodeId, bool>> apply_failures(double now);
  /// Every instant at which apply_failures can change something, sorted.
  std::vector<double> failure_times() const;

 private:
  Vec2 random_point(Rng& rng) const;
  void draw_leg(NodeState& n, double depart);

  std::vector<NodeState> nodes_;
  RadioModel radio_;
  double width_;
  double height_;
  double speed_;
  double pause_;
  std::vector<Blackout> blackouts_;
  /// Which nodes each blackout covers, decided from positions at its start.
  std::vector<std::vector<bool>> blackout_members_;
  std::vector<bool> blackout_resolved_;
  Rng mobility_rng_;
};

}  // namespace rolab::sim
