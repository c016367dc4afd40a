#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace qmanet {

using Bytes = std::vector<std::uint8_t>;

/// Identifier of a simulated node. Ordering is used for every tie-break.
struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}

  auto operator<=>(const NodeId&) const = default;

  static constexpr NodeId broadcast() { return NodeId{std::numeric_limits<std::uint32_t>::max()}; }
  constexpr bool is_broadcast() const { return *this == broadcast(); }
};

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

/// Simulated time in integral microseconds.
struct SimTime {
  std::uint64_t ticks = 0;

  constexpr SimTime() = default;
  constexpr explicit SimTime(std::uint64_t us) : ticks(us) {}

  static constexpr SimTime micros(std::uint64_t us) { return SimTime{us}; }
  static constexpr SimTime millis(std::uint64_t ms) { return SimTime{ms * 1000}; }
  static constexpr SimTime seconds(std::uint64_t s) { return SimTime{s * 1000000}; }
  static SimTime from_seconds(double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("SimTime must be a finite non-negative duration");
    return SimTime{static_cast<std::uint64_t>(std::llround(s * 1e6))};
  }
  static constexpr SimTime max() { return SimTime{std::numeric_limits<std::uint64_t>::max()}; }

  constexpr double to_seconds() const { return static_cast<double>(ticks) / 1e6; }
  constexpr double to_millis() const { return static_cast<double>(ticks) / 1e3; }

  auto operator<=>(const SimTime&) const = default;

  constexpr SimTime operator+(SimTime o) const { return SimTime{ticks + o.ticks}; }
  constexpr SimTime& operator+=(SimTime o) {
    ticks += o.ticks;
    return *this;
  }
  // Saturates at zero.
  constexpr SimTime operator-(SimTime o) const { return SimTime{ticks > o.ticks ? ticks - o.ticks : 0}; }
  constexpr SimTime operator*(std::uint64_t k) const { return SimTime{ticks * k}; }
};

inline std::ostream& operator<<(std::ostream& os, SimTime t) { return os << t.ticks << "us"; }

}  // namespace qmanet
