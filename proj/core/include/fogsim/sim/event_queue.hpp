#pragma once

#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/error.hpp"
#include "fogsim/sim/time.hpp"

namespace fogsim::sim {

template <typename Target, typename Payload>
struct SimEvent {
  SimTime fire_at;
  std::uint64_t seq = 0;
  Target target;
  Payload payload;
};

// Single-threaded discrete-event queue. Events are processed in (fire_at, seq)
// order; seq is assigned at scheduling time so simultaneous events are FIFO.
template <typename Target, typename Payload>
class EventQueue {
 public:
  using Event = SimEvent<Target, Payload>;

  SimTime now() const noexcept { return clock_; }
  std::size_t size() const noexcept { return heap_.size(); }
  bool empty() const noexcept { return heap_.empty(); }
  std::uint64_t scheduled_count() const noexcept { return next_seq_; }

  Event schedule(SimTime fire_at, Target target, Payload payload) {
    if (fire_at < clock_) {
      throw Error(ErrorCode::kSchedulingInPast,
                  "fire_at " + std::to_string(fire_at.ms) + " ms is before clock " +
                      std::to_string(clock_.ms) + " ms");
    }
    Event ev{fire_at, next_seq_++, std::move(target), std::move(payload)};
    heap_.push(ev);
    return ev;
  }

  // Processes every event with fire_at <= deadline, then advances the clock to
  // the deadline. Handlers may schedule further events, including ones that
  // fall inside the same window.
  template <typename F>
  std::size_t run_until(SimTime deadline, F&& handler) {
    std::size_t processed = 0;
    while (!heap_.empty() && heap_.top().fire_at <= deadline) {
      Event ev = heap_.top();
      heap_.pop();
      clock_ = ev.fire_at;
      handler(*this, ev);
      ++processed;
    }
    if (clock_ < deadline) clock_ = deadline;
    return processed;
  }

  // Drains the queue completely.
  template <typename F>
  std::size_t run(F&& handler) {
    std::size_t processed = 0;
    while (!heap_.empty()) {
      Event ev = heap_.top();
      heap_.pop();
      clock_ = ev.fire_at;
      handler(*this, ev);
      ++processed;
    }
    return processed;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  SimTime clock_{};
  std::uint64_t next_seq_ = 0;
};

}  // namespace fogsim::sim
