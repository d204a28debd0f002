#include "rolab/scheduler.hpp"

#include <stdexcept>
#include <string>

namespace rolab::sim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::transmit: return "transmit";
    case EventKind::receive: return "receive";
    case EventKind::timer: return "timer";
    case EventKind::move: return "move";
    case EventKind::fail: return "fail";
    case EventKind::recover: return "recover";
    case EventKind::traffic: return "traffic";
  }
  return "?";
}

void Scheduler::schedule(double time, NodeId node, EventKind kind, std::function<void()> action) {
  if (time < now_) {
    throw std::logic_error("event scheduled in the past: t=" + std::to_string(time) +
                           " now=" + std::to_string(now_));
  }
  queue_.push(SimEvent{time, next_seq_++, node, kind, std::move(action)});
}

std::size_t Scheduler::run_until(double limit) {
  std::size_t count = 0;
  while (!queue_.empty() && queue_.top().time <= limit) {
    // priority_queue::top is const; move the action out before popping.
    SimEvent event = std::move(const_cast<SimEvent&>(queue_.top()));
    queue_.pop();
    now_ = event.time;
    if (logging_) log_.push_back({event.time, event.seq, event.node, event.kind});
    ++processed_;
    ++count;
    if (event.action) event.action();
  }
  return count;
}

}  // namespace rolab::sim
