#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "rolab/packet.hpp"

namespace rolab::proto {

struct RouteEntry {
  NodeId destination = kNoNode;
  NodeId next_hop = kNoNode;
  int hop_count = 0;
  double expiry = 0.0;
  std::uint32_t dest_seq = 0;
  bool seq_known = false;
  bool valid = true;
  /// Carries (or carried) data or a route reply; HELLO monitoring follows it.
  bool active = false;
  /// Installed by a reply to this node's own request.
  bool owned = false;
  /// Source-routing profiles: full node list self..destination.
  std::vector<NodeId> path;
  /// Data origins whose traffic is forwarded over this entry.
  std::set<NodeId> users;

  bool usable(double now) const { return valid && now <= expiry; }
};

/// Fresher sequence number first, then fewer hops, then lowest next hop.
bool better_route(const RouteEntry& a, const RouteEntry& b);

/// Routing table (one best route per destination) or route cache (up to
/// `capacity` distinct routes per destination). Expired entries are never
/// returned and are deleted by purge().
class RouteStore {
 public:
  RouteStore(bool multi, std::size_t capacity) : multi_(multi), capacity_(multi ? capacity : 1) {}

  /// Stores `entry` if it is new or better than what is held. Refreshing
  /// an identical route extends its expiry. Returns the stored entry, or
  /// nullptr if the offer was rejected.
  RouteEntry* offer(RouteEntry entry, double now);

  RouteEntry* best(NodeId destination, double now);
  RouteEntry* best_if(NodeId destination, double now, const std::function<bool(const RouteEntry&)>& accept);

  /// Valid, unexpired entries whose first hop is `next_hop`.
  std::vector<RouteEntry*> via(NodeId next_hop, double now);
  bool has_active_via(NodeId next_hop, double now) const;

  /// Drops every route that uses the link from -> to (in either direction
  /// for source routes); table entries at `from` through `to` are marked
  /// invalid. Invalidated table entries bump their destination sequence
  /// number so stale copies elsewhere no longer count as fresh. Returns the
  /// destinations affected.
  std::vector<NodeId> remove_link(NodeId self, NodeId from, NodeId to);
  void invalidate(NodeId destination);

  void purge(double now);
  void clear() { routes_.clear(); }
  std::size_t size() const;
  bool multi() const { return multi_; }

  const std::map<NodeId, std::vector<RouteEntry>>& entries() const { return routes_; }

 private:
  bool multi_;
  std::size_t capacity_;
  std::map<NodeId, std::vector<RouteEntry>> routes_;
};

}  // namespace rolab::proto
