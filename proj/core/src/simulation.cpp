#include "rolab/simulation.hpp"

#include <cmath>
#include <cstdio>

namespace rolab::sim {

using proto::Packet;
using proto::PacketKind;

namespace {

ScenarioConfig validated(ScenarioConfig config) {
  config.validate();
  return config;
}

}  // namespace

Simulation::Simulation(ScenarioConfig config)
    : config_(validated(std::move(config))), world_(config_), loss_rng_(config_.seed, Stream::loss) {
  engine_ = std::make_unique<proto::ReactiveEngine>(config_.profile, config_.params,
                                                    static_cast<std::size_t>(config_.node_count), *this);
  flows_ = config_.flows;
  const auto& rt = config_.random_traffic;
  if (rt.flows > 0) {
    Rng traffic(config_.seed, Stream::traffic);
    const auto n = static_cast<std::uint64_t>(config_.node_count);
    for (int i = 0; i < rt.flows; ++i) {
      FlowSpec f;
      f.source = static_cast<NodeId>(traffic.below(n));
      auto dest = static_cast<NodeId>(traffic.below(n - 1));
      if (dest >= f.source) ++dest;
      f.destination = dest;
      // Staggered starts keep the flows from firing in lockstep.
      f.start = rt.start + traffic.uniform(0.0, 1.0 / rt.rate_pps);
      f.stop = rt.stop;
      f.rate_pps = rt.rate_pps;
      f.packet_bytes = rt.packet_bytes;
      flows_.push_back(f);
    }
  }
}

void Simulation::schedule_at(double time, NodeId node, std::function<void()> action) {
  scheduler_.schedule(time, node, EventKind::timer, std::move(action));
}

void Simulation::record_transmit(NodeId from, NodeId to, const Packet& p) {
  TraceRecord r;
  r.time = now();
  r.node = from;
  r.event = TraceEvent::transmit;
  r.packet = p.kind;
  r.origin = p.origin;
  r.destination = p.destination;
  r.peer = to;
  r.ttl = p.ttl;
  r.hop_count = p.hop_count;
  r.uid = p.uid;
  r.app_send_time = p.app_send_time;
  r.bytes = p.wire_bytes();
  r.gratuitous = p.gratuitous;
  trace_.add(r);
}

void Simulation::deliver_to(NodeId from, NodeId to, const Packet& packet, bool addressed, double delay) {
  scheduler_.schedule(now() + delay, to, EventKind::receive, [this, from, to, packet, addressed] {
    if (!world_.alive(to)) return;
    if (addressed) {
      TraceRecord r;
      r.time = now();
      r.node = to;
      r.event = TraceEvent::receive;
      r.packet = packet.kind;
      r.origin = packet.origin;
      r.destination = packet.destination;
      r.peer = from;
      r.ttl = packet.ttl;
      r.hop_count = packet.hop_count + 1;
      r.uid = packet.uid;
      r.app_send_time = packet.app_send_time;
      r.bytes = packet.wire_bytes();
      r.gratuitous = packet.gratuitous;
      trace_.add(r);
      engine_->on_receive(to, packet, from);
    } else {
      engine_->on_overhear(to, packet, from);
    }
  });
}

void Simulation::broadcast(NodeId from, Packet packet) {
  if (!world_.alive(from)) return;
  packet.previous_hop = from;
  record_transmit(from, kNoNode, packet);
  const double delay = world_.radio().hop_delay(packet.wire_bytes());
  for (NodeId nb : world_.neighbors(from, now())) {
    if (loss_rng_.bernoulli(world_.radio().loss_probability)) continue;
    deliver_to(from, nb, packet, true, delay);
  }
}

void Simulation::unicast(NodeId from, NodeId to, Packet packet, bool feedback) {
  if (!world_.alive(from)) return;
  packet.previous_hop = from;
  record_transmit(from, to, packet);
  const double delay = world_.radio().hop_delay(packet.wire_bytes());
  const bool listeners = config_.profile.promiscuous || config_.profile.hello_monitoring;
  bool reached = false;
  for (NodeId nb : world_.neighbors(from, now())) {
    if (nb != to && !listeners) continue;
    if (loss_rng_.bernoulli(world_.radio().loss_probability)) {
      if (nb == to) reached = true;  // lost in the air, not unreachable
      continue;
    }
    if (nb == to) reached = true;
    deliver_to(from, nb, packet, nb == to, delay);
  }
  if (!reached && feedback) {
    scheduler_.schedule(now() + delay, from, EventKind::timer,
                        [this, from, to, packet] { engine_->on_link_failure(from, to, packet); });
  }
}

void Simulation::schedule_flow(std::size_t index, std::uint64_t k) {
  const FlowSpec& f = flows_[index];
  if (f.packets && k >= *f.packets) return;
  const double stop = f.stop > 0.0 ? f.stop : config_.duration;
  const double t = f.start + static_cast<double>(k) / f.rate_pps;
  if (t > stop || t > config_.duration) return;
  scheduler_.schedule(t, f.source, EventKind::traffic, [this, index, k] {
    const FlowSpec& flow = flows_[index];
    engine_->send_data(flow.source, flow.destination, flow.packet_bytes);
    schedule_flow(index, k + 1);
  });
}

void Simulation::schedule_move(NodeId node) {
  const double next = world_.node(node).leg.resume;
  if (!std::isfinite(next) || next > config_.duration) return;
  scheduler_.schedule(next, node, EventKind::move, [this, node] {
    world_.step_node(node, now());
    schedule_move(node);
  });
}

void Simulation::run() {
  if (started_) return;
  started_ = true;
  for (std::size_t i = 0; i < flows_.size(); ++i) schedule_flow(i, 0);
  if (world_.mobile()) {
    for (std::size_t i = 0; i < world_.size(); ++i) schedule_move(static_cast<NodeId>(i));
  }
  for (double t : world_.failure_times()) {
    if (t > config_.duration) continue;
    scheduler_.schedule(t, kNoNode, EventKind::fail, [this] {
      for (const auto& [node, up] : world_.apply_failures(now())) {
        TraceRecord r;
        r.time = now();
        r.node = node;
        r.event = up ? TraceEvent::recover : TraceEvent::fail;
        trace_.add(r);
        if (up) {
          engine_->on_node_up(node);
        } else {
          engine_->on_node_down(node);
        }
      }
    });
  }
  scheduler_.run_until(config_.duration);
}

RunResult Simulation::run_and_report() {
  run();
  RunResult out;
  out.stats = engine_->stats();
  out.report = metrics::build_report(trace_, config_, out.stats);
  out.trace = std::move(trace_);
  return out;
}

RunResult run_scenario(const ScenarioConfig& config) {
  Simulation sim(config);
  return sim.run_and_report();
}

}  // namespace rolab::sim
