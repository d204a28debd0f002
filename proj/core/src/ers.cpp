#include "rolab/ers.hpp"

#include <cmath>

namespace rolab::proto {

ErsState ErsState::from_params(const ProtocolParams& params) {
  ErsState s;
  s.ttl_start = params.ttl_start;
  s.ttl_increment = params.ttl_increment;
  s.ttl_threshold = params.ttl_threshold;
  s.network_ttl = params.net_diameter;
  s.rreq_retries_max = params.rreq_retries;
  s.net_traversal_time = params.net_traversal_time;
  s.node_traversal_time = params.node_traversal_time;
  s.backoff_multiplier = params.backoff_multiplier;
  if (params.expanding_ring) {
    s.ttl_current = params.ttl_start;
  } else {
    s.ttl_current = params.net_diameter;
    s.network_wide = true;
  }
  return s;
}

ErsState ErsState::single_ring(const ProtocolParams& params, int ttl) {
  ErsState s = from_params(params);
  s.ttl_start = ttl;
  s.ttl_current = ttl;
  s.ttl_threshold = ttl;
  s.network_wide = false;
  s.rreq_retries_max = 0;
  s.single_attempt = true;
  return s;
}

double ErsState::wait() const {
  if (!network_wide) return 2.0 * node_traversal_time * (ttl_current + 2);
  return net_traversal_time * std::pow(backoff_multiplier, retries_used);
}

bool ErsState::escalate() {
  if (single_attempt) return false;
  if (!network_wide) {
    if (ttl_current + ttl_increment <= ttl_threshold) {
      ttl_current += ttl_increment;
      return true;
    }
    network_wide = true;
    ttl_current = network_ttl;
    return true;
  }
  if (retries_used >= rreq_retries_max) return false;
  ++retries_used;
  return true;
}

}  // namespace rolab::proto
