#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rolab/packet.hpp"

namespace rolab::sim {

enum class TraceEvent : std::uint8_t { transmit, receive, originate, deliver, drop, fail, recover };

std::string_view to_string(TraceEvent event);

enum class DropReason : std::uint8_t {
  none,
  buffer_overflow,
  discovery_failed,
  no_route,
  link_break,
  node_down,
  missing_reverse_route,
  ttl_expired,
  duplicate,
  malformed,
  loop,
};

std::string_view to_string(DropReason reason);

struct TraceRecord {
  double time = 0.0;
  NodeId node = kNoNode;
  TraceEvent event = TraceEvent::transmit;
  proto::PacketKind packet = proto::PacketKind::data;
  NodeId origin = kNoNode;
  NodeId destination = kNoNode;
  NodeId peer = kNoNode;  ///< transmit: addressee (kNoNode = broadcast); receive: sender
  int ttl = 0;
  int hop_count = 0;
  std::uint64_t uid = 0;
  double app_send_time = 0.0;
  std::uint32_t bytes = 0;
  bool gratuitous = false;
  DropReason reason = DropReason::none;
};

/// A delivered data packet with the node list it traversed.
struct Delivery {
  std::uint64_t uid = 0;
  NodeId origin = kNoNode;
  NodeId destination = kNoNode;
  double send_time = 0.0;
  double receive_time = 0.0;
  std::uint32_t bytes = 0;
  std::vector<NodeId> path;
};

class Trace {
 public:
  void add(const TraceRecord& record) { records_.push_back(record); }
  void add_delivery(Delivery delivery) { deliveries_.push_back(std::move(delivery)); }

  const std::vector<TraceRecord>& records() const { return records_; }
  const std::vector<Delivery>& deliveries() const { return deliveries_; }

  /// Newline-delimited JSON, one record per line:
  /// {"t":..,"node":..,"ev":..,"kind":..,"src":..,"dst":..,"ttl":..,...}
  std::string to_ndjson() const;
  /// FNV-1a over to_ndjson().
  std::uint64_t digest() const;

 private:
  std::vector<TraceRecord> records_;
  std::vector<Delivery> deliveries_;
};

}  // namespace rolab::sim
