#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rolab::proto {

/// Feature flags selecting one protocol's behavior on the shared engine.
struct ProtocolProfile {
  std::string name;
  /// Route requests accumulate the traversed path; data carries the full route.
  bool source_routing = false;
  /// Intermediate nodes holding a fresh-enough route may answer a request.
  bool grat_rrep = false;
  /// Keep several routes per destination instead of the single best one.
  bool route_cache_multi = false;
  /// Periodic HELLO link monitoring on active routes.
  bool hello_monitoring = false;
  /// Explicit per-hop ACK for every forwarded data packet. Profiles with
  /// neither HELLO nor ACK monitoring rely on link-layer failure feedback.
  bool ack_monitoring = false;
  /// Learn routes from overheard source-routed packets.
  bool promiscuous = false;
  /// Try a bounded repair discovery at the break point before reporting.
  bool local_repair = false;
  /// An origin may send on any cached route, including ones learned in
  /// passing. Otherwise only routes it discovered itself are used.
  bool reuse_cached_routes = false;

  bool operator==(const ProtocolProfile&) const = default;
};

ProtocolProfile aodv_profile();
ProtocolProfile dsr_profile();
ProtocolProfile dymo_profile();

/// "aodv", "dsr" or "dymo" (case-insensitive). Throws ValidationError otherwise.
ProtocolProfile builtin_profile(std::string_view name);
std::vector<std::string> builtin_profile_names();

/// Engine timing and sizing constants. Defaults follow RFC 3561 magnitudes.
struct ProtocolParams {
  bool expanding_ring = true;
  int ttl_start = 1;
  int ttl_increment = 2;
  int ttl_threshold = 7;
  int net_diameter = 35;  ///< network-wide TTL
  int rreq_retries = 2;   ///< additional network-wide attempts
  double net_traversal_time = 2.8;
  /// Per-hop budget used to size ring timeouts: 2 * node_traversal * (ttl + 2).
  double node_traversal_time = 0.04;
  double backoff_multiplier = 2.0;
  double hello_interval = 1.0;
  int allowed_hello_loss = 2;
  double route_lifetime = 10.0;
  double duplicate_window = 6.0;
  std::size_t buffer_capacity = 64;
  int local_add_ttl = 2;
  double ack_timeout = 0.05;
  std::size_t max_cached_routes = 3;

  void validate() const;
};

}  // namespace rolab::proto
