#pragma once

#include <memory>

#include "rolab/engine.hpp"
#include "rolab/metrics.hpp"
#include "rolab/scenario.hpp"
#include "rolab/scheduler.hpp"
#include "rolab/trace.hpp"
#include "rolab/world.hpp"

namespace rolab::sim {

struct RunResult {
  metrics::RunReport report;
  Trace trace;
  proto::EngineStats stats;
};

/// One scenario run: owns the event queue, the world and the engine, and
/// plays the radio medium between them.
class Simulation : public proto::Medium {
 public:
  explicit Simulation(ScenarioConfig config);
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Schedules traffic, mobility and failures, then runs to the configured
  /// duration. Call once.
  void run();
  /// run() followed by report assembly. The trace moves into the result.
  RunResult run_and_report();

  const ScenarioConfig& config() const { return config_; }
  World& world() { return world_; }
  Scheduler& scheduler() { return scheduler_; }
  proto::ReactiveEngine& engine() { return *engine_; }
  const Trace& trace() const { return trace_; }
  /// Endpoints of every flow, the random ones included, in schedule order.
  const std::vector<FlowSpec>& flows() const { return flows_; }

  // Medium.
  double now() const override { return scheduler_.now(); }
  bool alive(NodeId node) const override { return world_.alive(node); }
  void broadcast(NodeId from, proto::Packet packet) override;
  void unicast(NodeId from, NodeId to, proto::Packet packet, bool feedback) override;
  void schedule_at(double time, NodeId node, std::function<void()> action) override;
  void record(const TraceRecord& record) override { trace_.add(record); }
  void record_delivery(Delivery delivery) override { trace_.add_delivery(std::move(delivery)); }

 private:
  void record_transmit(NodeId from, NodeId to, const proto::Packet& packet);
  void deliver_to(NodeId from, NodeId to, const proto::Packet& packet, bool addressed, double delay);
  void schedule_flow(std::size_t flow, std::uint64_t index);
  void schedule_move(NodeId node);

  ScenarioConfig config_;
  Scheduler scheduler_;
  World world_;
  Trace trace_;
  Rng loss_rng_;
  std::vector<FlowSpec> flows_;
  std::unique_ptr<proto::ReactiveEngine> engine_;
  bool started_ = false;
};

/// Validates the config and runs it.
RunResult run_scenario(const ScenarioConfig& config);

}  // namespace rolab::sim
