#pragma once

// Generalized reactive routing engine. One state machine covers route
// discovery (expanding ring search with backoff), route replies along the
// reverse path, data forwarding with buffering, link monitoring (HELLO or
// per-hop ACK) and route error / local repair. A ProtocolProfile selects
// the AODV-, DSR- or DYMO-style behavior.

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rolab/ers.hpp"
#include "rolab/packet.hpp"
#include "rolab/profile.hpp"
#include "rolab/route_store.hpp"
#include "rolab/trace.hpp"

namespace rolab::proto {

/// What the engine needs from the simulated network.
class Medium {
 public:
  virtual ~Medium() = default;
  virtual double now() const = 0;
  virtual bool alive(NodeId node) const = 0;
  virtual void broadcast(NodeId from, Packet packet) = 0;
  /// `feedback` asks for on_link_failure when the addressee cannot be reached.
  virtual void unicast(NodeId from, NodeId to, Packet packet, bool feedback) = 0;
  virtual void schedule_at(double time, NodeId node, std::function<void()> action) = 0;
  virtual void record(const sim::TraceRecord& record) = 0;
  virtual void record_delivery(sim::Delivery delivery) = 0;
};

/// Per-engine packet counters that are not visible as trace transmissions.
struct EngineStats {
  std::uint64_t gratuitous_rreps = 0;
  std::uint64_t rreqs_originated = 0;
  std::uint64_t local_repairs_started = 0;
  std::uint64_t local_repairs_succeeded = 0;
};

class ReactiveEngine {
 public:
  ReactiveEngine(ProtocolProfile profile, ProtocolParams params, std::size_t node_count, Medium& medium);

  // Application side.

  /// Hands a data packet to `node` for `destination`. Sends at once when a
  /// usable route exists, otherwise buffers it and starts a discovery.
  void send_data(NodeId node, NodeId destination, std::uint32_t payload_bytes);

  /// Starts (or joins) route discovery unless a usable route exists; in
  /// that case any buffered data is flushed and no RREQ is sent.
  void originate_route_request(NodeId node, NodeId destination);

  // Medium callbacks.

  void on_receive(NodeId node, const Packet& packet, NodeId from);
  void on_overhear(NodeId node, const Packet& packet, NodeId from);
  void on_link_failure(NodeId node, NodeId to, const Packet& packet);
  void on_node_down(NodeId node);
  void on_node_up(NodeId node);

  // Protocol handlers, public so tests can drive them directly.

  void handle_rreq(NodeId node, const Packet& packet, NodeId from);
  void handle_rrep(NodeId node, const Packet& packet, NodeId from);
  void handle_rerr(NodeId node, const Packet& packet, NodeId from);
  void forward_data(NodeId node, const Packet& packet, NodeId from);
  /// Invalidates routes through node -> broken and repairs or reports them.
  /// `failed` is the data packet whose transmission revealed the break.
  void handle_link_break(NodeId node, NodeId broken, std::optional<Packet> failed);

  // Inspection.

  const ProtocolProfile& profile() const { return profile_; }
  const ProtocolParams& params() const { return params_; }
  const EngineStats& stats() const { return stats_; }
  const RouteStore& routes(NodeId node) const { return nodes_.at(node).routes; }
  RouteStore& routes(NodeId node) { return nodes_.at(node).routes; }
  bool discovery_pending(NodeId node, NodeId destination) const;
  std::optional<ErsState> discovery_state(NodeId node, NodeId destination) const;
  std::size_t buffered(NodeId node, NodeId destination) const;
  /// Neighbors `node` currently exchanges HELLOs with.
  std::vector<NodeId> monitored_neighbors(NodeId node) const;

 private:
  struct Discovery {
    ErsState ers;
    std::uint64_t token = 0;
    /// Data origins to notify with RERR if the discovery fails (local repair).
    std::set<NodeId> notify_on_failure;
  };

  struct LinkMonitor {
    double start = 0.0;
    std::uint64_t ticks = 0;
    std::uint64_t token = 0;
  };

  struct PendingAck {
    NodeId to = kNoNode;
    Packet packet;
    std::uint64_t token = 0;
  };

  struct SeenRequest {
    double expiry = 0.0;
    std::size_t replies = 0;
  };

  struct NodeProto {
    explicit NodeProto(const ProtocolProfile& profile, const ProtocolParams& params)
        : routes(profile.route_cache_multi, params.max_cached_routes) {}

    std::uint64_t epoch = 0;
    std::uint32_t own_seq = 0;
    std::uint32_t next_rreq_id = 0;
    RouteStore routes;
    std::map<std::pair<NodeId, std::uint32_t>, SeenRequest> seen;
    std::map<NodeId, std::deque<Packet>> buffer;
    std::map<NodeId, Discovery> discoveries;
    std::map<NodeId, LinkMonitor> monitors;
    /// Neighbors that route through this node, with relation expiry.
    std::map<NodeId, double> hello_peers;
    std::map<NodeId, double> last_heard;
    std::map<std::uint64_t, PendingAck> acks;
    std::optional<std::pair<NodeId, NodeId>> last_error;
  };

  double now() const { return medium_.now(); }
  NodeProto& state(NodeId node) { return nodes_.at(node); }

  // Route helpers.
  RouteEntry* origin_route(NodeId node, NodeId destination);
  RouteEntry* transit_route(NodeId node, NodeId destination);
  /// Offers the route `path` (self first) to `node`'s store.
  RouteEntry* offer_path(NodeId node, const std::vector<NodeId>& path, bool active, bool owned,
                         std::optional<std::uint32_t> seq);
  /// Route-cache profiles also keep every intermediate node of a learned path.
  void offer_prefixes(NodeId node, const std::vector<NodeId>& path);
  void learn_overheard(NodeId node, const std::vector<NodeId>& path, std::size_t transmitter_index);
  void mark_active(NodeId node, RouteEntry& entry);
  void refresh(NodeId node, NodeId destination);

  // Discovery.
  void send_rreq(NodeId node, NodeId destination, int ttl);
  void start_discovery(NodeId node, NodeId destination, ErsState ers, std::set<NodeId> notify);
  void discovery_timeout(NodeId node, NodeId destination, std::uint64_t epoch, std::uint64_t token);
  void complete_discovery(NodeId node, NodeId destination);
  void fail_discovery(NodeId node, NodeId destination);
  bool send_rrep(NodeId node, const Packet& rreq, NodeId from, RouteEntry* via);
  /// Route-cache profiles re-route a packet stranded by a break over another
  /// cached route.
  bool salvage(NodeId node, Packet packet);

  // Data path.
  void buffer_packet(NodeId node, Packet packet);
  void flush(NodeId node, NodeId destination);
  void send_on_route(NodeId node, Packet packet, RouteEntry& route);
  void transmit_data(NodeId node, NodeId next_hop, Packet packet);
  void deliver(NodeId node, const Packet& packet);
  void send_ack(NodeId node, const Packet& data, NodeId to);
  void ack_timeout(NodeId node, std::uint64_t uid, std::uint64_t epoch, std::uint64_t token);

  // Maintenance.
  void send_rerr(NodeId node, NodeId notify, NodeId unreachable, NodeId broken,
                 const std::vector<NodeId>* back_path);
  void ensure_monitor(NodeId node, NodeId neighbor);
  void monitor_tick(NodeId node, NodeId neighbor, std::uint64_t epoch, std::uint64_t token);
  bool relies_on(NodeId node, NodeId neighbor);
  bool relied_on_by(NodeId node, NodeId neighbor);

  void drop(NodeId node, const Packet& packet, sim::DropReason reason);
  std::uint64_t next_token() { return ++token_counter_; }

  ProtocolProfile profile_;
  ProtocolParams params_;
  Medium& medium_;
  std::vector<NodeProto> nodes_;
  std::set<std::uint64_t> delivered_uids_;
  std::uint64_t next_uid_ = 0;
  std::uint64_t token_counter_ = 0;
  EngineStats stats_;
};

}  // namespace rolab::proto
