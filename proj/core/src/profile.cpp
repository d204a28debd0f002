#include "rolab/profile.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "rolab/error.hpp"

namespace rolab::proto {

ProtocolProfile aodv_profile() {
  ProtocolProfile p;
  p.name = "aodv";
  p.grat_rrep = true;
  p.hello_monitoring = true;
  p.local_repair = true;
  return p;
}

ProtocolProfile dsr_profile() {
  ProtocolProfile p;
  p.name = "dsr";
  p.source_routing = true;
  p.grat_rrep = true;
  p.route_cache_multi = true;
  p.ack_monitoring = true;
  p.promiscuous = true;
  p.reuse_cached_routes = true;
  return p;
}

ProtocolProfile dymo_profile() {
  ProtocolProfile p;
  p.name = "dymo";
  p.source_routing = true;
  return p;
}

ProtocolProfile builtin_profile(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "aodv") return aodv_profile();
  if (lower == "dsr") return dsr_profile();
  if (lower == "dymo") return dymo_profile();
  throw ValidationError("unknown protocol '" + std::string(name) + "' (expected aodv, dsr or dymo)");
}

std::vector<std::string> builtin_profile_names() { return {"aodv", "dsr", "dymo"}; }

void ProtocolParams::validate() const {
  if (ttl_start < 1) throw ValidationError("ttl_start must be >= 1");
  if (ttl_increment < 1) throw ValidationError("ttl_increment must be >= 1");
  if (ttl_threshold < ttl_start) throw ValidationError("ttl_threshold must be >= ttl_start");
  if (net_diameter < ttl_threshold) throw ValidationError("net_diameter must be >= ttl_threshold");
  if (rreq_retries < 0) throw ValidationError("rreq_retries must be >= 0");
  if (!(net_traversal_time > 0.0)) throw ValidationError("net_traversal_time must be > 0");
  if (!(node_traversal_time > 0.0)) throw ValidationError("node_traversal_time must be > 0");
  if (!(backoff_multiplier >= 1.0)) throw ValidationError("backoff_multiplier must be >= 1");
  if (!(hello_interval > 0.0)) throw ValidationError("hello_interval must be > 0");
  if (allowed_hello_loss < 1) throw ValidationError("allowed_hello_loss must be >= 1");
  if (!(route_lifetime > 0.0)) throw ValidationError("route_lifetime must be > 0");
  if (!(duplicate_window > 0.0)) throw ValidationError("duplicate_window must be > 0");
  if (buffer_capacity < 1) throw ValidationError("buffer_capacity must be >= 1");
  if (local_add_ttl < 0) throw ValidationError("local_add_ttl must be >= 0");
  if (!(ack_timeout > 0.0)) throw ValidationError("ack_timeout must be > 0");
  if (max_cached_routes < 1) throw ValidationError("max_cached_routes must be >= 1");
}

}  // namespace rolab::proto
