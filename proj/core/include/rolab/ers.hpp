#pragma once

#include "rolab/profile.hpp"

namespace rolab::proto {

/// Expanding-ring search with binary exponential backoff on the
/// network-wide attempts. Rings grow ttl_start, ttl_start + increment, ...
/// while the TTL stays at or below ttl_threshold; after that every attempt
/// uses the network-wide TTL, with rreq_retries_max retries whose waits
/// double (by backoff_multiplier) each time.
struct ErsState {
  int ttl_current = 1;
  int ttl_start = 1;
  int ttl_increment = 2;
  int ttl_threshold = 7;
  int network_ttl = 35;
  int retries_used = 0;
  int rreq_retries_max = 2;
  double net_traversal_time = 2.8;
  double node_traversal_time = 0.04;
  double backoff_multiplier = 2.0;
  bool network_wide = false;
  bool single_attempt = false;

  /// Plain flooding when params.expanding_ring is false.
  static ErsState from_params(const ProtocolParams& params);
  /// One bounded ring of the given TTL and no retries (local repair).
  static ErsState single_ring(const ProtocolParams& params, int ttl);

  /// Timeout for the attempt that was just sent.
  double wait() const;
  /// Moves to the next attempt after a timeout. Returns false once every
  /// attempt is spent.
  bool escalate();
};

}  // namespace rolab::proto
