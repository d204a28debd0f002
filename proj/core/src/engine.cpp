#include "rolab/engine.hpp"

#include <algorithm>

namespace rolab::proto {

using sim::DropReason;
using sim::TraceEvent;
using sim::TraceRecord;

namespace {

constexpr double kTimeSlack = 1e-9;
constexpr int kMaxSalvage = 15;

std::size_t index_of(const std::vector<NodeId>& path, NodeId node) {
  auto it = std::find(path.begin(), path.end(), node);
  return it == path.end() ? path.size() : static_cast<std::size_t>(it - path.begin());
}

bool has_repeats(const std::vector<NodeId>& path) {
  std::vector<NodeId> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace

ReactiveEngine::ReactiveEngine(ProtocolProfile profile, ProtocolParams params, std::size_t node_count,
                               Medium& medium)
    : profile_(std::move(profile)), params_(params), medium_(medium) {
  params_.validate();
  nodes_.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) nodes_.emplace_back(profile_, params_);
}

// ---------------------------------------------------------------- inspection

bool ReactiveEngine::discovery_pending(NodeId node, NodeId destination) const {
  return nodes_.at(node).discoveries.count(destination) > 0;
}

std::optional<ErsState> ReactiveEngine::discovery_state(NodeId node, NodeId destination) const {
  const auto& d = nodes_.at(node).discoveries;
  auto it = d.find(destination);
  if (it == d.end()) return std::nullopt;
  return it->second.ers;
}

std::size_t ReactiveEngine::buffered(NodeId node, NodeId destination) const {
  const auto& b = nodes_.at(node).buffer;
  auto it = b.find(destination);
  return it == b.end() ? 0 : it->second.size();
}

std::vector<NodeId> ReactiveEngine::monitored_neighbors(NodeId node) const {
  std::vector<NodeId> out;
  for (const auto& [nb, m] : nodes_.at(node).monitors) out.push_back(nb);
  return out;
}

// ------------------------------------------------------------- route helpers

RouteEntry* ReactiveEngine::origin_route(NodeId node, NodeId destination) {
  const bool reuse = profile_.reuse_cached_routes;
  return state(node).routes.best_if(destination, now(), [reuse](const RouteEntry& e) { return reuse || e.owned; });
}

RouteEntry* ReactiveEngine::transit_route(NodeId node, NodeId destination) {
  return state(node).routes.best(destination, now());
}

RouteEntry* ReactiveEngine::offer_path(NodeId node, const std::vector<NodeId>& path, bool active, bool owned,
                                       std::optional<std::uint32_t> seq) {
  if (path.size() < 2 || path.front() != node || has_repeats(path)) return nullptr;
  RouteEntry e;
  e.destination = path.back();
  e.next_hop = path[1];
  e.hop_count = static_cast<int>(path.size()) - 1;
  e.expiry = now() + params_.route_lifetime;
  e.active = active;
  e.owned = owned;
  if (seq) {
    e.dest_seq = *seq;
    e.seq_known = true;
  }
  if (profile_.source_routing) e.path = path;
  RouteEntry* stored = state(node).routes.offer(std::move(e), now());
  if (stored != nullptr && active) mark_active(node, *stored);
  return stored;
}

void ReactiveEngine::offer_prefixes(NodeId node, const std::vector<NodeId>& path) {
  if (!profile_.reuse_cached_routes) return;
  for (std::size_t k = 2; k + 1 < path.size(); ++k) {
    offer_path(node, std::vector<NodeId>(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(k)), false,
               false, std::nullopt);
  }
}

void ReactiveEngine::learn_overheard(NodeId node, const std::vector<NodeId>& path, std::size_t transmitter_index) {
  if (transmitter_index >= path.size() || index_of(path, node) != path.size()) return;
  std::vector<NodeId> forward{node};
  forward.insert(forward.end(), path.begin() + static_cast<std::ptrdiff_t>(transmitter_index), path.end());
  std::vector<NodeId> backward{node};
  for (std::size_t i = transmitter_index + 1; i-- > 0;) backward.push_back(path[i]);
  for (const auto* p : {&forward, &backward}) {
    offer_path(node, *p, false, false, std::nullopt);
    offer_prefixes(node, *p);
  }
}

void ReactiveEngine::mark_active(NodeId node, RouteEntry& entry) {
  entry.active = true;
  entry.expiry = std::max(entry.expiry, now() + params_.route_lifetime);
  ensure_monitor(node, entry.next_hop);
}

void ReactiveEngine::refresh(NodeId node, NodeId destination) {
  if (RouteEntry* r = transit_route(node, destination)) r->expiry = std::max(r->expiry, now() + params_.route_lifetime);
}

// ----------------------------------------------------------------- discovery

void ReactiveEngine::send_data(NodeId node, NodeId destination, std::uint32_t payload_bytes) {
  if (!medium_.alive(node)) return;
  Packet p;
  p.kind = PacketKind::data;
  p.origin = node;
  p.destination = destination;
  p.payload_bytes = payload_bytes;
  p.uid = ++next_uid_;
  p.app_send_time = now();
  p.ttl = params_.net_diameter;

  TraceRecord r;
  r.time = now();
  r.node = node;
  r.event = TraceEvent::originate;
  r.packet = PacketKind::data;
  r.origin = node;
  r.destination = destination;
  r.uid = p.uid;
  r.app_send_time = p.app_send_time;
  r.bytes = payload_bytes;
  medium_.record(r);

  if (destination == node) {
    deliver(node, p);
    return;
  }
  if (RouteEntry* route = origin_route(node, destination)) {
    send_on_route(node, std::move(p), *route);
    return;
  }
  buffer_packet(node, std::move(p));
  originate_route_request(node, destination);
}

void ReactiveEngine::originate_route_request(NodeId node, NodeId destination) {
  if (!medium_.alive(node) || destination == node) return;
  if (origin_route(node, destination) != nullptr) {
    flush(node, destination);
    return;
  }
  if (state(node).discoveries.count(destination) > 0) return;
  start_discovery(node, destination, ErsState::from_params(params_), {});
}

void ReactiveEngine::start_discovery(NodeId node, NodeId destination, ErsState ers, std::set<NodeId> notify) {
  NodeProto& s = state(node);
  Discovery& d = s.discoveries[destination];
  d.ers = ers;
  d.token = next_token();
  d.notify_on_failure = std::move(notify);
  send_rreq(node, destination, d.ers.ttl_current);
  const std::uint64_t epoch = s.epoch;
  const std::uint64_t token = d.token;
  medium_.schedule_at(now() + d.ers.wait(), node,
                      [this, node, destination, epoch, token] { discovery_timeout(node, destination, epoch, token); });
}

void ReactiveEngine::send_rreq(NodeId node, NodeId destination, int ttl) {
  NodeProto& s = state(node);
  ++s.own_seq;
  Packet p;
  p.kind = PacketKind::rreq;
  p.origin = node;
  p.destination = destination;
  p.rreq_id = s.next_rreq_id++;
  p.origin_seq = s.own_seq;
  p.ttl = ttl;
  p.hop_count = 0;
  // Last known destination sequence number, even from an invalidated entry.
  if (auto it = s.routes.entries().find(destination); it != s.routes.entries().end()) {
    for (const auto& e : it->second) {
      if (e.seq_known && (!p.dest_seq_known || e.dest_seq > p.dest_seq)) {
        p.dest_seq = e.dest_seq;
        p.dest_seq_known = true;
      }
    }
  }
  if (profile_.source_routing) p.source_route = std::vector<NodeId>{node};
  if (profile_.reuse_cached_routes) p.stale_link = s.last_error;
  s.seen[{node, p.rreq_id}] = SeenRequest{now() + params_.duplicate_window, 0};
  ++stats_.rreqs_originated;
  medium_.broadcast(node, std::move(p));
}

void ReactiveEngine::discovery_timeout(NodeId node, NodeId destination, std::uint64_t epoch, std::uint64_t token) {
  NodeProto& s = state(node);
  if (s.epoch != epoch) return;
  auto it = s.discoveries.find(destination);
  if (it == s.discoveries.end() || it->second.token != token) return;
  if (origin_route(node, destination) != nullptr) {
    complete_discovery(node, destination);
    return;
  }
  Discovery& d = it->second;
  if (!d.ers.escalate()) {
    fail_discovery(node, destination);
    return;
  }
  d.token = next_token();
  send_rreq(node, destination, d.ers.ttl_current);
  const std::uint64_t next = d.token;
  medium_.schedule_at(now() + d.ers.wait(), node,
                      [this, node, destination, epoch, next] { discovery_timeout(node, destination, epoch, next); });
}

void ReactiveEngine::complete_discovery(NodeId node, NodeId destination) {
  NodeProto& s = state(node);
  auto it = s.discoveries.find(destination);
  if (it != s.discoveries.end()) {
    if (!it->second.notify_on_failure.empty()) ++stats_.local_repairs_succeeded;
    s.discoveries.erase(it);
  }
  s.last_error.reset();
  flush(node, destination);
}

void ReactiveEngine::fail_discovery(NodeId node, NodeId destination) {
  NodeProto& s = state(node);
  auto it = s.discoveries.find(destination);
  if (it == s.discoveries.end()) return;
  const std::set<NodeId> notify = std::move(it->second.notify_on_failure);
  s.discoveries.erase(it);
  if (auto b = s.buffer.find(destination); b != s.buffer.end()) {
    const std::deque<Packet> lost = std::move(b->second);
    s.buffer.erase(b);
    for (const Packet& p : lost) drop(node, p, DropReason::discovery_failed);
  }
  for (NodeId origin : notify) send_rerr(node, origin, destination, kNoNode, nullptr);
}

// -------------------------------------------------------------------- RREQ

void ReactiveEngine::handle_rreq(NodeId node, const Packet& p, NodeId from) {
  if (p.origin == node) return;
  if (p.ttl < 0 || (profile_.source_routing && (!p.source_route || p.source_route->empty()))) {
    drop(node, p, DropReason::malformed);
    return;
  }
  NodeProto& s = state(node);
  const std::pair<NodeId, std::uint32_t> key{p.origin, p.rreq_id};
  auto seen = s.seen.find(key);
  if (seen != s.seen.end() && now() <= seen->second.expiry) {
    // A route cache collects several disjoint replies at the destination.
    if (node == p.destination && profile_.route_cache_multi && seen->second.replies < params_.max_cached_routes &&
        index_of(*p.source_route, node) == p.source_route->size()) {
      std::vector<NodeId> back{node};
      back.insert(back.end(), p.source_route->rbegin(), p.source_route->rend());
      offer_path(node, back, false, false, p.origin_seq);
      if (send_rrep(node, p, from, nullptr)) ++s.seen[key].replies;
    }
    return;
  }
  if (s.seen.size() > 4096) std::erase_if(s.seen, [&](const auto& kv) { return now() > kv.second.expiry; });
  s.seen[key] = SeenRequest{now() + params_.duplicate_window, 0};

  const int hops = p.hop_count + 1;
  if (p.stale_link) s.routes.remove_link(node, p.stale_link->first, p.stale_link->second);
  if (profile_.source_routing) {
    if (index_of(*p.source_route, node) != p.source_route->size()) return;
    std::vector<NodeId> back{node};
    back.insert(back.end(), p.source_route->rbegin(), p.source_route->rend());
    offer_path(node, back, false, false, p.origin_seq);
    offer_prefixes(node, back);
  } else {
    RouteEntry reverse;
    reverse.destination = p.origin;
    reverse.next_hop = from;
    reverse.hop_count = hops;
    reverse.expiry = now() + params_.route_lifetime;
    reverse.dest_seq = p.origin_seq;
    reverse.seq_known = true;
    s.routes.offer(std::move(reverse), now());
  }

  if (node == p.destination) {
    if (send_rrep(node, p, from, nullptr)) ++s.seen[key].replies;
    return;
  }
  if (profile_.grat_rrep) {
    RouteEntry* known = transit_route(node, p.destination);
    const bool fresh = known != nullptr && known->next_hop != from &&
                       (!p.dest_seq_known || !known->seq_known || known->dest_seq >= p.dest_seq);
    if (fresh && send_rrep(node, p, from, known)) return;
  }
  if (p.ttl - 1 <= 0) {
    drop(node, p, DropReason::ttl_expired);
    return;
  }
  Packet forward = p;
  forward.ttl = p.ttl - 1;
  forward.hop_count = hops;
  forward.previous_hop = from;
  if (profile_.source_routing) forward.source_route->push_back(node);
  medium_.broadcast(node, std::move(forward));
}

bool ReactiveEngine::send_rrep(NodeId node, const Packet& rreq, NodeId from, RouteEntry* via) {
  NodeProto& s = state(node);
  Packet r;
  r.kind = PacketKind::rrep;
  r.origin = rreq.origin;
  r.destination = rreq.destination;
  r.ttl = params_.net_diameter;
  if (via == nullptr) {
    s.own_seq = std::max(s.own_seq + 1, rreq.dest_seq_known ? rreq.dest_seq : 0U);
    r.dest_seq = s.own_seq;
    r.dest_seq_known = true;
    r.hop_count = 0;
  } else {
    r.dest_seq = via->dest_seq;
    r.dest_seq_known = via->seq_known;
    r.hop_count = via->hop_count;
    r.gratuitous = true;
  }

  NodeId next = kNoNode;
  if (profile_.source_routing) {
    std::vector<NodeId> full = *rreq.source_route;
    full.push_back(node);
    if (via != nullptr) {
      if (via->path.size() < 2) return false;
      full.insert(full.end(), via->path.begin() + 1, via->path.end());
    }
    if (has_repeats(full)) return false;
    next = (*rreq.source_route).back();
    r.source_route = std::move(full);
  } else {
    RouteEntry* reverse = transit_route(node, rreq.origin);
    if (reverse == nullptr) {
      drop(node, r, DropReason::missing_reverse_route);
      return false;
    }
    mark_active(node, *reverse);
    next = reverse->next_hop;
  }
  (void)from;
  if (via != nullptr) {
    ++stats_.gratuitous_rreps;
    mark_active(node, *via);
  }
  s.hello_peers[next] = now() + params_.route_lifetime;
  medium_.unicast(node, next, std::move(r), false);
  return true;
}

// -------------------------------------------------------------------- RREP

void ReactiveEngine::handle_rrep(NodeId node, const Packet& p, NodeId from) {
  const bool at_origin = node == p.origin;
  const int hops = p.hop_count + 1;
  NodeId next = kNoNode;
  if (profile_.source_routing) {
    if (!p.source_route) {
      drop(node, p, DropReason::malformed);
      return;
    }
    const auto& path = *p.source_route;
    const std::size_t idx = index_of(path, node);
    if (idx + 1 >= path.size() || path[idx + 1] != from) {
      drop(node, p, DropReason::malformed);
      return;
    }
    const std::vector<NodeId> forward(path.begin() + static_cast<std::ptrdiff_t>(idx), path.end());
    offer_path(node, forward, true, at_origin, p.dest_seq_known ? std::optional(p.dest_seq) : std::nullopt);
    offer_prefixes(node, forward);
    if (idx > 0) next = path[idx - 1];
  } else {
    RouteEntry e;
    e.destination = p.destination;
    e.next_hop = from;
    e.hop_count = hops;
    e.expiry = now() + params_.route_lifetime;
    e.dest_seq = p.dest_seq;
    e.seq_known = p.dest_seq_known;
    e.active = true;
    e.owned = at_origin;
    if (RouteEntry* stored = state(node).routes.offer(std::move(e), now())) mark_active(node, *stored);
  }

  if (at_origin) {
    if (discovery_pending(node, p.destination)) {
      if (origin_route(node, p.destination) != nullptr) complete_discovery(node, p.destination);
    } else {
      flush(node, p.destination);
    }
    return;
  }

  if (!profile_.source_routing) {
    RouteEntry* reverse = transit_route(node, p.origin);
    if (reverse == nullptr) {
      drop(node, p, DropReason::missing_reverse_route);
      return;
    }
    mark_active(node, *reverse);
    next = reverse->next_hop;
  }
  if (next == kNoNode) {
    drop(node, p, DropReason::malformed);
    return;
  }
  Packet forward = p;
  forward.hop_count = hops;
  forward.previous_hop = from;
  state(node).hello_peers[next] = now() + params_.route_lifetime;
  medium_.unicast(node, next, std::move(forward), false);
}

// -------------------------------------------------------------------- RERR

void ReactiveEngine::send_rerr(NodeId node, NodeId notify, NodeId unreachable, NodeId broken,
                               const std::vector<NodeId>* back_path) {
  if (notify == node || !medium_.alive(node)) return;
  Packet e;
  e.kind = PacketKind::rerr;
  e.origin = node;
  e.destination = notify;
  e.unreachable = unreachable;
  e.broken_to = broken;
  e.ttl = params_.net_diameter;
  NodeId next = kNoNode;
  if (profile_.source_routing) {
    std::vector<NodeId> path;
    if (back_path != nullptr && back_path->size() >= 2 && back_path->front() == node &&
        back_path->back() == notify) {
      path = *back_path;
    } else if (RouteEntry* r = transit_route(node, notify); r != nullptr && r->path.size() >= 2) {
      path = r->path;
    } else {
      return;
    }
    next = path[1];
    e.source_route = std::move(path);
  } else {
    RouteEntry* r = transit_route(node, notify);
    if (r == nullptr) return;
    next = r->next_hop;
  }
  medium_.unicast(node, next, std::move(e), false);
}

void ReactiveEngine::handle_rerr(NodeId node, const Packet& p, NodeId from) {
  NodeProto& s = state(node);
  const NodeId lost = p.unreachable;
  if (profile_.source_routing) {
    if (!p.source_route) {
      drop(node, p, DropReason::malformed);
      return;
    }
    if (p.broken_to != kNoNode) {
      s.routes.remove_link(node, p.origin, p.broken_to);
    } else {
      s.routes.invalidate(lost);
    }
  } else {
    RouteEntry* r = s.routes.best(lost, now());
    if (r != nullptr && r->next_hop == from) s.routes.invalidate(lost);
  }

  if (node == p.destination) {
    if (profile_.reuse_cached_routes && p.broken_to != kNoNode) s.last_error = std::pair(p.origin, p.broken_to);
    if (origin_route(node, lost) == nullptr) originate_route_request(node, lost);
    return;
  }

  NodeId next = kNoNode;
  if (profile_.source_routing) {
    const auto& path = *p.source_route;
    const std::size_t idx = index_of(path, node);
    if (idx + 1 >= path.size()) {
      drop(node, p, DropReason::malformed);
      return;
    }
    next = path[idx + 1];
  } else {
    RouteEntry* r = transit_route(node, p.destination);
    if (r == nullptr) {
      drop(node, p, DropReason::no_route);
      return;
    }
    next = r->next_hop;
  }
  Packet forward = p;
  forward.hop_count = p.hop_count + 1;
  forward.previous_hop = from;
  medium_.unicast(node, next, std::move(forward), false);
}

// -------------------------------------------------------------------- data

void ReactiveEngine::buffer_packet(NodeId node, Packet packet) {
  auto& queue = state(node).buffer[packet.destination];
  while (queue.size() >= params_.buffer_capacity && !queue.empty()) {
    drop(node, queue.front(), DropReason::buffer_overflow);
    queue.pop_front();
  }
  queue.push_back(std::move(packet));
}

void ReactiveEngine::flush(NodeId node, NodeId destination) {
  NodeProto& s = state(node);
  auto it = s.buffer.find(destination);
  if (it == s.buffer.end()) return;
  std::deque<Packet> queue = std::move(it->second);
  s.buffer.erase(it);
  std::deque<Packet> kept;
  for (Packet& p : queue) {
    if (p.origin == node) {
      if (RouteEntry* r = origin_route(node, destination)) {
        send_on_route(node, std::move(p), *r);
        continue;
      }
    } else if (RouteEntry* r = transit_route(node, destination)) {
      if (profile_.source_routing) {
        // Splice: the part already travelled, then the repaired remainder.
        std::vector<NodeId> route;
        if (p.source_route) {
          const std::size_t idx = index_of(*p.source_route, node);
          if (idx < p.source_route->size()) {
            route.assign(p.source_route->begin(), p.source_route->begin() + static_cast<std::ptrdiff_t>(idx));
          }
        }
        route.insert(route.end(), r->path.begin(), r->path.end());
        if (has_repeats(route)) {
          drop(node, p, DropReason::no_route);
          continue;
        }
        p.source_route = std::move(route);
      }
      r->users.insert(p.origin);
      mark_active(node, *r);
      const NodeId next = r->next_hop;
      transmit_data(node, next, std::move(p));
      continue;
    }
    kept.push_back(std::move(p));
  }
  if (!kept.empty()) {
    auto& queue_back = s.buffer[destination];
    for (auto& p : kept) queue_back.push_back(std::move(p));
  }
}

void ReactiveEngine::send_on_route(NodeId node, Packet packet, RouteEntry& route) {
  route.users.insert(node);
  mark_active(node, route);
  if (profile_.source_routing) packet.source_route = route.path;
  const NodeId next = route.next_hop;
  transmit_data(node, next, std::move(packet));
}

void ReactiveEngine::transmit_data(NodeId node, NodeId next_hop, Packet packet) {
  // A repaired route can lead back through nodes the packet already crossed.
  const auto& seen = packet.visited;
  if (std::find(seen.begin(), seen.end(), next_hop) != seen.end() ||
      std::find(seen.begin(), seen.end(), node) != seen.end()) {
    drop(node, packet, DropReason::loop);
    return;
  }
  packet.visited.push_back(node);
  if (profile_.ack_monitoring) {
    NodeProto& s = state(node);
    const std::uint64_t token = next_token();
    const std::uint64_t uid = packet.uid;
    s.acks[uid] = PendingAck{next_hop, packet, token};
    const std::uint64_t epoch = s.epoch;
    medium_.schedule_at(now() + params_.ack_timeout, node,
                        [this, node, uid, epoch, token] { ack_timeout(node, uid, epoch, token); });
    medium_.unicast(node, next_hop, std::move(packet), false);
  } else {
    medium_.unicast(node, next_hop, std::move(packet), !profile_.hello_monitoring);
  }
}

void ReactiveEngine::forward_data(NodeId node, const Packet& p, NodeId from) {
  NodeProto& s = state(node);
  s.hello_peers[from] = now() + params_.route_lifetime;
  if (profile_.ack_monitoring) send_ack(node, p, from);

  if (p.destination == node) {
    deliver(node, p);
    refresh(node, p.origin);
    return;
  }

  if (profile_.source_routing) {
    if (!p.source_route) {
      drop(node, p, DropReason::malformed);
      return;
    }
    const auto& path = *p.source_route;
    const std::size_t idx = index_of(path, node);
    if (idx == 0 || idx + 1 >= path.size()) {
      drop(node, p, DropReason::malformed);
      return;
    }
    const std::vector<NodeId> forward(path.begin() + static_cast<std::ptrdiff_t>(idx), path.end());
    std::vector<NodeId> backward;
    for (std::size_t i = idx + 1; i-- > 0;) backward.push_back(path[i]);
    if (RouteEntry* r = offer_path(node, forward, true, false, std::nullopt)) r->users.insert(p.origin);
    offer_path(node, backward, false, false, std::nullopt);
    offer_prefixes(node, forward);
    offer_prefixes(node, backward);
    transmit_data(node, path[idx + 1], p);
    return;
  }

  RouteEntry* r = transit_route(node, p.destination);
  if (r == nullptr && discovery_pending(node, p.destination)) {
    buffer_packet(node, p);
    return;
  }
  if (r == nullptr) {
    drop(node, p, DropReason::no_route);
    send_rerr(node, p.origin, p.destination, kNoNode, nullptr);
    return;
  }
  r->users.insert(p.origin);
  mark_active(node, *r);
  refresh(node, p.origin);
  const NodeId next = r->next_hop;
  transmit_data(node, next, p);
}

void ReactiveEngine::deliver(NodeId node, const Packet& p) {
  if (!delivered_uids_.insert(p.uid).second) return;
  TraceRecord r;
  r.time = now();
  r.node = node;
  r.event = TraceEvent::deliver;
  r.packet = PacketKind::data;
  r.origin = p.origin;
  r.destination = p.destination;
  r.hop_count = static_cast<int>(p.visited.size());
  r.uid = p.uid;
  r.app_send_time = p.app_send_time;
  r.bytes = p.payload_bytes;
  medium_.record(r);

  sim::Delivery d;
  d.uid = p.uid;
  d.origin = p.origin;
  d.destination = p.destination;
  d.send_time = p.app_send_time;
  d.receive_time = now();
  d.bytes = p.payload_bytes;
  d.path = p.visited;
  d.path.push_back(node);
  medium_.record_delivery(std::move(d));
}

void ReactiveEngine::send_ack(NodeId node, const Packet& data, NodeId to) {
  Packet a;
  a.kind = PacketKind::ack;
  a.origin = node;
  a.destination = to;
  a.uid = data.uid;
  a.ttl = 1;
  medium_.unicast(node, to, std::move(a), false);
}

void ReactiveEngine::ack_timeout(NodeId node, std::uint64_t uid, std::uint64_t epoch, std::uint64_t token) {
  NodeProto& s = state(node);
  if (s.epoch != epoch) return;
  auto it = s.acks.find(uid);
  if (it == s.acks.end() || it->second.token != token) return;
  const NodeId to = it->second.to;
  Packet failed = std::move(it->second.packet);
  s.acks.erase(it);
  handle_link_break(node, to, std::move(failed));
}

// ------------------------------------------------------------- maintenance

void ReactiveEngine::handle_link_break(NodeId node, NodeId broken, std::optional<Packet> failed) {
  if (!medium_.alive(node)) return;
  NodeProto& s = state(node);

  std::map<NodeId, std::set<NodeId>> notify;
  std::map<NodeId, int> remaining_hops;
  std::set<NodeId> own;
  for (RouteEntry* e : s.routes.via(broken, now())) {
    for (NodeId u : e->users) {
      if (u == node) {
        own.insert(e->destination);
      } else {
        notify[e->destination].insert(u);
      }
    }
    remaining_hops[e->destination] = std::max(remaining_hops[e->destination], e->hop_count);
  }
  s.routes.remove_link(node, node, broken);
  s.monitors.erase(broken);
  s.hello_peers.erase(broken);

  std::vector<NodeId> back_path;
  if (failed) {
    if (!failed->visited.empty() && failed->visited.back() == node) failed->visited.pop_back();
    const NodeId dest = failed->destination;
    if (failed->origin == node) {
      own.insert(dest);
      buffer_packet(node, *failed);
      failed.reset();
    } else {
      notify[dest].insert(failed->origin);
      if (failed->source_route) {
        const auto& path = *failed->source_route;
        const std::size_t idx = index_of(path, node);
        if (idx < path.size()) {
          for (std::size_t i = idx + 1; i-- > 0;) back_path.push_back(path[i]);
          remaining_hops[dest] = std::max(remaining_hops[dest], static_cast<int>(path.size() - 1 - idx));
        }
      }
    }
  }

  for (auto& [dest, origins] : notify) {
    if (origins.empty()) continue;
    const bool carries_failed = failed && failed->destination == dest;
    if (profile_.local_repair) {
      if (carries_failed) buffer_packet(node, *failed);
      if (auto d = s.discoveries.find(dest); d != s.discoveries.end()) {
        d->second.notify_on_failure.insert(origins.begin(), origins.end());
      } else {
        const int ttl = std::max(remaining_hops[dest], 1) + params_.local_add_ttl;
        ++stats_.local_repairs_started;
        start_discovery(node, dest, ErsState::single_ring(params_, ttl), origins);
      }
    } else {
      for (NodeId origin : origins) {
        const bool use_back = carries_failed && origin == failed->origin && !back_path.empty();
        send_rerr(node, origin, dest, broken, use_back ? &back_path : nullptr);
      }
      if (carries_failed && !salvage(node, *failed)) drop(node, *failed, DropReason::link_break);
    }
  }
  for (NodeId dest : own) originate_route_request(node, dest);
}

bool ReactiveEngine::salvage(NodeId node, Packet packet) {
  if (!profile_.reuse_cached_routes || !profile_.source_routing || packet.salvage_count >= kMaxSalvage) return false;
  RouteEntry* r = transit_route(node, packet.destination);
  if (r == nullptr) return false;
  // The packet keeps its travelled prefix; the cached route replaces the rest.
  std::vector<NodeId> route;
  if (packet.source_route) {
    const std::size_t idx = index_of(*packet.source_route, node);
    if (idx < packet.source_route->size()) {
      route.assign(packet.source_route->begin(), packet.source_route->begin() + static_cast<std::ptrdiff_t>(idx));
    }
  }
  route.insert(route.end(), r->path.begin(), r->path.end());
  if (has_repeats(route)) return false;
  packet.source_route = std::move(route);
  ++packet.salvage_count;
  r->users.insert(packet.origin);
  mark_active(node, *r);
  const NodeId next = r->next_hop;
  transmit_data(node, next, std::move(packet));
  return true;
}

void ReactiveEngine::ensure_monitor(NodeId node, NodeId neighbor) {
  if (!profile_.hello_monitoring || neighbor == kNoNode) return;
  NodeProto& s = state(node);
  if (s.monitors.count(neighbor) > 0) return;
  LinkMonitor m;
  m.start = now();
  m.token = next_token();
  s.monitors[neighbor] = m;
  double& heard = s.last_heard[neighbor];
  heard = std::max(heard, now());
  const std::uint64_t epoch = s.epoch;
  const std::uint64_t token = m.token;
  medium_.schedule_at(m.start + params_.hello_interval, node,
                      [this, node, neighbor, epoch, token] { monitor_tick(node, neighbor, epoch, token); });
}

bool ReactiveEngine::relies_on(NodeId node, NodeId neighbor) {
  return state(node).routes.has_active_via(neighbor, now());
}

bool ReactiveEngine::relied_on_by(NodeId node, NodeId neighbor) {
  const auto& peers = state(node).hello_peers;
  auto it = peers.find(neighbor);
  return it != peers.end() && now() <= it->second + kTimeSlack;
}

void ReactiveEngine::monitor_tick(NodeId node, NodeId neighbor, std::uint64_t epoch, std::uint64_t token) {
  NodeProto& s = state(node);
  if (s.epoch != epoch || !medium_.alive(node)) return;
  auto it = s.monitors.find(neighbor);
  if (it == s.monitors.end() || it->second.token != token) return;
  LinkMonitor& m = it->second;
  ++m.ticks;

  const bool downstream = relies_on(node, neighbor);
  const bool upstream = relied_on_by(node, neighbor);
  if (!downstream && !upstream) {
    s.monitors.erase(it);
    return;
  }
  const double silence = now() - s.last_heard[neighbor];
  if (downstream && silence > params_.allowed_hello_loss * params_.hello_interval + kTimeSlack) {
    s.monitors.erase(it);
    handle_link_break(node, neighbor, std::nullopt);
    return;
  }

  Packet h;
  h.kind = PacketKind::hello;
  h.origin = node;
  h.destination = neighbor;
  h.ttl = 1;
  const double next = m.start + static_cast<double>(m.ticks + 1) * params_.hello_interval;
  medium_.unicast(node, neighbor, std::move(h), false);
  medium_.schedule_at(next, node,
                      [this, node, neighbor, epoch, token] { monitor_tick(node, neighbor, epoch, token); });
}

// -------------------------------------------------------------- callbacks

void ReactiveEngine::on_receive(NodeId node, const Packet& p, NodeId from) {
  if (!medium_.alive(node)) return;
  NodeProto& s = state(node);
  s.last_heard[from] = now();
  switch (p.kind) {
    case PacketKind::rreq: handle_rreq(node, p, from); break;
    case PacketKind::rrep: handle_rrep(node, p, from); break;
    case PacketKind::rerr: handle_rerr(node, p, from); break;
    case PacketKind::hello: break;
    case PacketKind::ack: {
      auto it = s.acks.find(p.uid);
      if (it != s.acks.end() && it->second.to == from) s.acks.erase(it);
      break;
    }
    case PacketKind::data: forward_data(node, p, from); break;
  }
}

void ReactiveEngine::on_overhear(NodeId node, const Packet& p, NodeId from) {
  if (!medium_.alive(node)) return;
  state(node).last_heard[from] = now();
  if (!profile_.promiscuous || !p.source_route) return;
  if (p.kind == PacketKind::rerr && p.broken_to != kNoNode) {
    state(node).routes.remove_link(node, p.origin, p.broken_to);
    return;
  }
  if (p.kind != PacketKind::data && p.kind != PacketKind::rrep) return;
  const std::size_t idx = index_of(*p.source_route, from);
  if (idx < p.source_route->size()) learn_overheard(node, *p.source_route, idx);
}

void ReactiveEngine::on_link_failure(NodeId node, NodeId to, const Packet& packet) {
  if (!medium_.alive(node) || packet.kind != PacketKind::data) return;
  handle_link_break(node, to, packet);
}

void ReactiveEngine::on_node_down(NodeId node) {
  NodeProto& s = state(node);
  for (const auto& [dest, queue] : s.buffer) {
    for (const Packet& p : queue) drop(node, p, DropReason::node_down);
  }
  const std::uint64_t epoch = s.epoch + 1;
  s = NodeProto(profile_, params_);
  s.epoch = epoch;
}

void ReactiveEngine::on_node_up(NodeId node) {
  // State was wiped when the node went down; bump the epoch again so that
  // no timer from before the outage survives the restart.
  ++state(node).epoch;
}

void ReactiveEngine::drop(NodeId node, const Packet& p, DropReason reason) {
  TraceRecord r;
  r.time = now();
  r.node = node;
  r.event = TraceEvent::drop;
  r.packet = p.kind;
  r.origin = p.origin;
  r.destination = p.destination;
  r.ttl = p.ttl;
  r.hop_count = p.hop_count;
  r.uid = p.uid;
  r.app_send_time = p.app_send_time;
  r.bytes = p.wire_bytes();
  r.reason = reason;
  medium_.record(r);
}

}  // namespace rolab::proto
