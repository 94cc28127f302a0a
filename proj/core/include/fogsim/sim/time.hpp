#pragma once

#include <compare>

namespace fogsim::sim {

// Virtual milliseconds. Used both for instants on the simulation clock and for
// non-negative durations between them.
struct SimTime {
  double ms = 0.0;

  constexpr SimTime() = default;
  constexpr explicit SimTime(double milliseconds) : ms(milliseconds) {}

  static constexpr SimTime seconds(double s) { return SimTime{s * 1000.0}; }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime& operator+=(SimTime other) {
    ms += other.ms;
    return *this;
  }
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return SimTime{a.ms + b.ms}; }
  friend constexpr SimTime operator-(SimTime a, SimTime b) { return SimTime{a.ms - b.ms}; }
};

}  // namespace fogsim::sim
