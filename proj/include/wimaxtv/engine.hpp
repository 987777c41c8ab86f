#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wimaxtv/sim_time.hpp"

namespace wimaxtv {

/// Single-threaded discrete-event engine.
///
/// Events are ordered by (fire_at, seq) where seq is the insertion counter,
/// so events scheduled for the same instant fire in FIFO order. `Payload` is
/// the tagged event kind, normally a std::variant owned by the model.
template <typename Payload>
class Engine {
public:
    using Handle = std::uint64_t;

    struct Event {
        SimTime fire_at;
        std::uint64_t seq = 0;
        Payload payload;
    };

    SimTime now() const { return now_; }
    std::size_t pending() const { return queue_.size(); }
    std::uint64_t fired() const { return fired_; }

    Handle schedule(SimTime at, Payload payload) {
        if (at < now_) {
            throw std::logic_error("Engine::schedule: event in the past");
        }
        const auto seq = next_seq_++;
        queue_.push(Event{at, seq, std::move(payload)});
        return seq;
    }

    /// Fires every event with fire_at <= t_end, then leaves the clock at t_end.
    /// The handler receives (const Event&, Engine&) and may schedule more events.
    template <typename Handler>
    std::size_t run_until(SimTime t_end, Handler&& handler) {
        std::size_t count = 0;
        while (!queue_.empty() && queue_.top().fire_at <= t_end) {
            Event ev = queue_.top();
            queue_.pop();
            now_ = ev.fire_at;
            ++count;
            ++fired_;
            handler(static_cast<const Event&>(ev), *this);
        }
        if (now_ < t_end) {
            now_ = t_end;
        }
        return count;
    }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.fire_at != b.fire_at) {
                return a.fire_at > b.fire_at;
            }
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    SimTime now_;
    std::uint64_t next_seq_ = 0;
    std::uint64_t fired_ = 0;
};

}  // namespace wimaxtv
