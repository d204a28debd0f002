#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <string_view>
#include <vector>

namespace rolab::sim {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

enum class EventKind : std::uint8_t { transmit, receive, timer, move, fail, recover, traffic };

std::string_view to_string(EventKind kind);

struct SimEvent {
  double time = 0.0;
  std::uint64_t seq = 0;
  NodeId node = kNoNode;
  EventKind kind = EventKind::timer;
  std::function<void()> action;
};

/// Processed-event log entry (the action itself is not recorded).
struct EventStamp {
  double time;
  std::uint64_t seq;
  NodeId node;
  EventKind kind;

  bool operator==(const EventStamp&) const = default;
};

/// Discrete-event queue ordered by (time, seq). Equal-time events run in
/// the order they were scheduled.
class Scheduler {
 public:
  /// Throws std::logic_error when time is earlier than now().
  void schedule(double time, NodeId node, EventKind kind, std::function<void()> action);
  void schedule_in(double delay, NodeId node, EventKind kind, std::function<void()> action) {
    schedule(now_ + delay, node, kind, std::move(action));
  }

  /// Runs events until the queue is empty or the next event is later than
  /// limit. The clock ends at the last processed event time.
  std::size_t run_until(double limit);

  double now() const { return now_; }
  std::size_t pending() const { return queue_.size(); }
  std::uint64_t processed() const { return processed_; }

  /// When enabled, every processed event is appended to log().
  void set_logging(bool enabled) { logging_ = enabled; }
  const std::vector<EventStamp>& log() const { return log_; }

 private:
  struct Later {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t processed_ = 0;
  bool logging_ = false;
  std::vector<EventStamp> log_;
};

}  // namespace rolab::sim
