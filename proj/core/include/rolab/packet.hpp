#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "rolab/scheduler.hpp"

namespace rolab::proto {

using sim::NodeId;
using sim::kNoNode;

enum class PacketKind : std::uint8_t { rreq, rrep, rerr, hello, ack, data };

std::string_view to_string(PacketKind kind);

struct Packet {
  PacketKind kind = PacketKind::data;
  /// RREQ/DATA: the requesting/sending node. RREP: the node the reply is
  /// returning to. RERR: the node that detected the break.
  NodeId origin = kNoNode;
  /// RREQ/RREP/DATA: the route destination. RERR/ACK/HELLO: the addressee.
  NodeId destination = kNoNode;
  NodeId previous_hop = kNoNode;
  std::uint32_t rreq_id = 0;
  std::uint32_t origin_seq = 0;
  std::uint32_t dest_seq = 0;
  bool dest_seq_known = false;
  int ttl = 0;
  int hop_count = 0;
  /// Full node list origin..destination, present iff the profile source-routes.
  std::optional<std::vector<NodeId>> source_route;
  std::uint32_t payload_bytes = 0;

  // Bookkeeping that a real header would not carry.
  std::uint64_t uid = 0;          ///< data packet identity, ACK matching
  double app_send_time = 0.0;     ///< DATA: application enqueue time
  std::vector<NodeId> visited;    ///< DATA: nodes traversed so far
  bool gratuitous = false;        ///< RREP issued by a non-destination
  NodeId unreachable = kNoNode;   ///< RERR: destination lost
  NodeId broken_to = kNoNode;     ///< RERR: far end of the broken link
  /// RREQ: last broken link the origin heard of, (from, to). Route caches
  /// purge it before answering.
  std::optional<std::pair<NodeId, NodeId>> stale_link;
  int salvage_count = 0;          ///< DATA: times re-routed by a transit node

  /// Size on the air: fixed header per kind, 4 bytes per source-route hop,
  /// plus the application payload for DATA.
  std::uint32_t wire_bytes() const;
};

}  // namespace rolab::proto
