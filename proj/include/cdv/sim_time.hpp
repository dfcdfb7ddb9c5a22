#pragma once

#include <compare>
#include <cstdint>

namespace cdv {

/// Simulated time in integer ticks. One tick is 0.05 s.
struct SimTime {
  std::uint64_t ticks = 0;

  static constexpr std::uint64_t kTicksPerSecond = 20;

  constexpr double seconds() const { return static_cast<double>(ticks) / kTicksPerSecond; }

  static constexpr SimTime from_seconds(std::uint64_t s) { return SimTime{s * kTicksPerSecond}; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;
  friend constexpr SimTime operator+(SimTime t, std::uint64_t d) { return SimTime{t.ticks + d}; }
};

}  // namespace cdv
