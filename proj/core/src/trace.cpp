#include "rolab/trace.hpp"

#include <algorithm>
#include <cstdio>

namespace rolab {

namespace proto {

std::string_view to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::rreq: return "RREQ";
    case PacketKind::rrep: return "RREP";
    case PacketKind::rerr: return "RERR";
    case PacketKind::hello: return "HELLO";
    case PacketKind::ack: return "ACK";
    case PacketKind::data: return "DATA";
  }
  return "?";
}

std::uint32_t Packet::wire_bytes() const {
  std::uint32_t header = 0;
  switch (kind) {
    case PacketKind::rreq: header = 24; break;
    case PacketKind::rrep: header = 20; break;
    case PacketKind::rerr: header = 12; break;
    case PacketKind::hello: header = 20; break;
    case PacketKind::ack: header = 8; break;
    case PacketKind::data: header = 0; break;
  }
  const auto hops = source_route ? static_cast<std::uint32_t>(source_route->size()) : 0U;
  return header + 4U * hops + (kind == PacketKind::data ? payload_bytes : 0U);
}

}  // namespace proto

namespace sim {

std::string_view to_string(TraceEvent event) {
  switch (event) {
    case TraceEvent::transmit: return "tx";
    case TraceEvent::receive: return "rx";
    case TraceEvent::originate: return "orig";
    case TraceEvent::deliver: return "deliver";
    case TraceEvent::drop: return "drop";
    case TraceEvent::fail: return "fail";
    case TraceEvent::recover: return "recover";
  }
  return "?";
}

std::string_view to_string(DropReason reason) {
  switch (reason) {
    case DropReason::none: return "none";
    case DropReason::buffer_overflow: return "buffer_overflow";
    case DropReason::discovery_failed: return "discovery_failed";
    case DropReason::no_route: return "no_route";
    case DropReason::link_break: return "link_break";
    case DropReason::node_down: return "node_down";
    case DropReason::missing_reverse_route: return "missing_reverse_route";
    case DropReason::ttl_expired: return "ttl_expired";
    case DropReason::duplicate: return "duplicate";
    case DropReason::malformed: return "malformed";
    case DropReason::loop: return "loop";
  }
  return "?";
}

namespace {

long long id_or_minus(NodeId id) { return id == kNoNode ? -1 : static_cast<long long>(id); }

}  // namespace

std::string Trace::to_ndjson() const {
  std::string out;
  out.reserve(records_.size() * 120);
  char line[320];
  for (const auto& r : records_) {
    const bool lifecycle = r.event == TraceEvent::fail || r.event == TraceEvent::recover;
    int n = 0;
    if (lifecycle) {
      n = std::snprintf(line, sizeof line, "{\"t\":%.9f,\"node\":%lld,\"ev\":\"%s\"}\n", r.time,
                        id_or_minus(r.node), std::string(to_string(r.event)).c_str());
    } else {
      n = std::snprintf(line, sizeof line,
                        "{\"t\":%.9f,\"node\":%lld,\"ev\":\"%s\",\"kind\":\"%s\",\"src\":%lld,\"dst\":%lld,"
                        "\"peer\":%lld,\"ttl\":%d,\"hops\":%d,\"uid\":%llu,\"bytes\":%u%s%s%s}\n",
                        r.time, id_or_minus(r.node), std::string(to_string(r.event)).c_str(),
                        std::string(proto::to_string(r.packet)).c_str(), id_or_minus(r.origin),
                        id_or_minus(r.destination), id_or_minus(r.peer), r.ttl, r.hop_count,
                        static_cast<unsigned long long>(r.uid), r.bytes, r.gratuitous ? ",\"grat\":true" : "",
                        r.reason != DropReason::none ? ",\"reason\":\"" : "",
                        r.reason != DropReason::none ? (std::string(to_string(r.reason)) + "\"").c_str() : "");
    }
    if (n > 0) out.append(line, static_cast<std::size_t>(std::min(n, static_cast<int>(sizeof line) - 1)));
  }
  return out;
}

std::uint64_t Trace::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_ndjson()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace sim

}  // namespace rolab
