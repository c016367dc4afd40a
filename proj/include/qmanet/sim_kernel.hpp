#pragma once

// Discrete-event core: simulated clock, seeded randomness, random-waypoint
// mobility and the unit-disk radio model.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmanet/types.hpp"

namespace qmanet {

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent purposes a node draws randomness for. Each gets its own
/// sub-stream so that adding draws for one purpose never shifts another.
enum class RngStream : std::uint8_t { mobility = 1, protocol = 2, attack = 3, placement = 4 };

/// Seeded generator. Values are produced from std::mt19937_64 with explicit
/// conversions, so sequences are identical on every standard library.
///
/// Sub-stream seed for (seed, node, stream):
///   splitmix64(seed ^ splitmix64((node << 8) | stream))
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t derive_seed(std::uint64_t seed, NodeId node, RngStream stream) {
    const std::uint64_t tag = (static_cast<std::uint64_t>(node.value) << 8) | static_cast<std::uint8_t>(stream);
    return splitmix64(seed ^ splitmix64(tag));
  }
  static Rng for_node(std::uint64_t seed, NodeId node, RngStream stream) {
    return Rng{derive_seed(seed, node, stream)};
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)); }
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Event queue
// ---------------------------------------------------------------------------

using EventId = std::uint64_t;

template <class Payload>
struct Event {
  EventId id = 0;
  SimTime fire_at;
  NodeId target;
  Payload payload;
};

/// Priority queue ordered by (fire_at, insertion order). The clock only moves
/// forward; scheduling in the past is rejected.
template <class Payload>
class EventQueue {
 public:
  EventId schedule(SimTime fire_at, NodeId target, Payload payload) {
    if (fire_at < now_) throw std::invalid_argument("event scheduled in the past");
    const EventId id = next_id_++;
    heap_.push_back(Event<Payload>{id, fire_at, target, std::move(payload)});
    std::push_heap(heap_.begin(), heap_.end(), later);
    return id;
  }

  /// Processes every event with fire_at <= end in order. Handlers may schedule
  /// further events. Returns the number of events processed.
  template <class Handler>
  std::size_t run_until(SimTime end, Handler&& handle) {
    std::size_t processed = 0;
    while (!heap_.empty() && heap_.front().fire_at <= end) {
      std::pop_heap(heap_.begin(), heap_.end(), later);
      Event<Payload> ev = std::move(heap_.back());
      heap_.pop_back();
      now_ = ev.fire_at;
      handle(ev);
      ++processed;
    }
    // Clock stops at the last processed event, or at `end` if later work remains.
    if (!heap_.empty() && end > now_) now_ = end;
    return processed;
  }

  SimTime now() const { return now_; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  static bool later(const Event<Payload>& a, const Event<Payload>& b) {
    if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
    return a.id > b.id;
  }

  std::vector<Event<Payload>> heap_;
  SimTime now_{};
  EventId next_id_ = 0;
};

// ---------------------------------------------------------------------------
// Mobility and radio
// ---------------------------------------------------------------------------

struct Arena {
  double width = 1000.0;
  double height = 1000.0;

  bool contains(double x, double y) const { return x >= 0.0 && y >= 0.0 && x <= width && y <= height; }
  bool operator==(const Arena&) const = default;
};

struct MobilityParams {
  double min_speed = 0.0;  // m/s
  double max_speed = 0.0;  // m/s
  SimTime pause{};

  bool operator==(const MobilityParams&) const = default;
};

struct NodePosition {
  double x = 0.0;
  double y = 0.0;
  double waypoint_x = 0.0;
  double waypoint_y = 0.0;
  double speed = 0.0;     // m/s
  SimTime pause_left{};  // remaining pause at the current waypoint
};

struct LinkModel {
  double radio_range = 250.0;                // metres
  SimTime per_hop_delay = SimTime::millis(2);
  Arena arena;

  bool operator==(const LinkModel&) const = default;
};

inline double distance(const NodePosition& a, const NodePosition& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

/// Random-waypoint step. Moves toward the waypoint at the current speed; on
/// arrival the node pauses (if configured), then draws a new waypoint and
/// speed from `rng` in the order: x, y, speed. A zero speed is a fixed point.
NodePosition advance_mobility(const NodePosition& pos, SimTime dt, const MobilityParams& params,
                              const Arena& arena, Rng& rng);

/// Sorted neighbor lists under the unit-disk rule (distance <= range).
/// The relation is symmetric and irreflexive.
std::vector<std::vector<NodeId>> neighbors_at(const std::vector<NodePosition>& positions, const LinkModel& model);

inline bool in_range(const NodePosition& a, const NodePosition& b, const LinkModel& model) {
  return distance(a, b) <= model.radio_range;
}

}  // namespace qmanet
