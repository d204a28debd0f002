#include "rolab/route_store.hpp"

#include <algorithm>

namespace rolab::proto {

bool better_route(const RouteEntry& a, const RouteEntry& b) {
  if (a.seq_known && b.seq_known && a.dest_seq != b.dest_seq) return a.dest_seq > b.dest_seq;
  if (a.seq_known != b.seq_known) return a.seq_known;
  if (a.hop_count != b.hop_count) return a.hop_count < b.hop_count;
  return a.next_hop < b.next_hop;
}

namespace {

bool same_route(const RouteEntry& a, const RouteEntry& b) {
  return a.next_hop == b.next_hop && a.path == b.path;
}

bool contains_link(const std::vector<NodeId>& path, NodeId a, NodeId b) {
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if ((path[i] == a && path[i + 1] == b) || (path[i] == b && path[i + 1] == a)) return true;
  }
  return false;
}

}  // namespace

RouteEntry* RouteStore::offer(RouteEntry entry, double now) {
  auto& list = routes_[entry.destination];
  std::erase_if(list, [&](const RouteEntry& e) { return now > e.expiry; });

  for (auto& held : list) {
    if (!same_route(held, entry)) continue;
    if (held.valid && held.seq_known && entry.seq_known && entry.dest_seq < held.dest_seq) return nullptr;
    held.expiry = std::max(held.valid ? held.expiry : 0.0, entry.expiry);
    held.hop_count = entry.hop_count;
    held.dest_seq = std::max(held.dest_seq, entry.dest_seq);
    held.seq_known = held.seq_known || entry.seq_known;
    held.active = (held.valid && held.active) || entry.active;
    held.owned = held.owned || entry.owned;
    held.valid = true;
    return &held;
  }

  if (!multi_) {
    if (!list.empty()) {
      RouteEntry& held = list.front();
      if (held.valid && !better_route(entry, held)) return nullptr;
      // The destination keeps its role for this node; only the path changes.
      entry.owned = entry.owned || held.owned;
      entry.active = entry.active || (held.valid && held.active);
      if (held.valid) entry.users.insert(held.users.begin(), held.users.end());
      held = std::move(entry);
      return &held;
    }
    list.push_back(std::move(entry));
    return &list.back();
  }

  std::erase_if(list, [](const RouteEntry& e) { return !e.valid; });
  if (list.size() >= capacity_) {
    auto worst = std::max_element(list.begin(), list.end(),
                                  [](const RouteEntry& a, const RouteEntry& b) { return better_route(a, b); });
    if (!better_route(entry, *worst)) return nullptr;
    *worst = std::move(entry);
    return &*worst;
  }
  list.push_back(std::move(entry));
  return &list.back();
}

RouteEntry* RouteStore::best(NodeId destination, double now) {
  return best_if(destination, now, [](const RouteEntry&) { return true; });
}

RouteEntry* RouteStore::best_if(NodeId destination, double now,
                                const std::function<bool(const RouteEntry&)>& accept) {
  auto it = routes_.find(destination);
  if (it == routes_.end()) return nullptr;
  RouteEntry* pick = nullptr;
  for (auto& e : it->second) {
    if (!e.usable(now) || !accept(e)) continue;
    if (pick == nullptr || better_route(e, *pick)) pick = &e;
  }
  return pick;
}

std::vector<RouteEntry*> RouteStore::via(NodeId next_hop, double now) {
  std::vector<RouteEntry*> out;
  for (auto& [dest, list] : routes_) {
    for (auto& e : list) {
      if (e.usable(now) && e.next_hop == next_hop) out.push_back(&e);
    }
  }
  return out;
}

bool RouteStore::has_active_via(NodeId next_hop, double now) const {
  for (const auto& [dest, list] : routes_) {
    for (const auto& e : list) {
      if (e.active && e.usable(now) && e.next_hop == next_hop) return true;
    }
  }
  return false;
}

std::vector<NodeId> RouteStore::remove_link(NodeId self, NodeId from, NodeId to) {
  std::vector<NodeId> affected;
  for (auto& [dest, list] : routes_) {
    bool hit = false;
    for (auto& e : list) {
      if (!e.valid) continue;
      const bool through = e.path.empty() ? (self == from && e.next_hop == to) : contains_link(e.path, from, to);
      if (through) {
        e.valid = false;
        if (!multi_ && e.seq_known) ++e.dest_seq;
        hit = true;
      }
    }
    if (multi_) std::erase_if(list, [](const RouteEntry& e) { return !e.valid; });
    if (hit) affected.push_back(dest);
  }
  return affected;
}

void RouteStore::invalidate(NodeId destination) {
  auto it = routes_.find(destination);
  if (it == routes_.end()) return;
  for (auto& e : it->second) {
    if (e.valid && !multi_ && e.seq_known) ++e.dest_seq;
    e.valid = false;
  }
  if (multi_) it->second.clear();
}

void RouteStore::purge(double now) {
  for (auto it = routes_.begin(); it != routes_.end();) {
    std::erase_if(it->second, [&](const RouteEntry& e) { return now > e.expiry; });
    it = it->second.empty() ? routes_.erase(it) : std::next(it);
  }
}

std::size_t RouteStore::size() const {
  std::size_t n = 0;
  for (const auto& [dest, list] : routes_) n += list.size();
  return n;
}

}  // namespace rolab::proto
