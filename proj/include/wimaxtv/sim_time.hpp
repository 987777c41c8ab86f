#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace wimaxtv {

/// Simulation clock value in integer microseconds. Also used for durations.
class SimTime {
public:
    constexpr SimTime() = default;

    static constexpr SimTime from_us(std::int64_t us) { return SimTime(us); }
    static constexpr SimTime from_ms(std::int64_t ms) { return SimTime(ms * 1000); }
    static constexpr SimTime from_seconds(std::int64_t s) { return SimTime(s * 1000000); }
    /// Rounds to the nearest microsecond.
    static SimTime from_seconds_f(double s);

    constexpr std::int64_t us() const { return us_; }
    constexpr double ms() const { return static_cast<double>(us_) / 1e3; }
    constexpr double seconds() const { return static_cast<double>(us_) / 1e6; }

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime o) const { return SimTime(us_ + o.us_); }
    constexpr SimTime operator-(SimTime o) const { return SimTime(us_ - o.us_); }
    constexpr SimTime& operator+=(SimTime o) {
        us_ += o.us_;
        return *this;
    }

    static constexpr SimTime max() { return SimTime(INT64_MAX / 2); }

private:
    constexpr explicit SimTime(std::int64_t us) : us_(us) {
        if (us < 0) {
            throw std::invalid_argument("SimTime: negative time");
        }
    }

    std::int64_t us_ = 0;
};

}  // namespace wimaxtv
