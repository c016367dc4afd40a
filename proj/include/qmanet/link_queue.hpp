#pragma once

// Outbound link layer: two strict-priority FIFO classes with drop-tail, a
// blacklist firewall at admission, and a trailing-window bandwidth estimate.

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>

#include "qmanet/types.hpp"
#include "qmanet/wire.hpp"

namespace qmanet::link {

enum class TrafficClass : std::uint8_t { control = 0, data = 1 };

/// HELLO/TC are control; DATA/ACK are data.
TrafficClass classify(const wire::Packet& p);

enum class EnqueueResult : std::uint8_t { accepted, dropped_overflow, dropped_firewall };

struct QueueConfig {
  std::size_t capacity = 50;        // packets per class
  std::uint64_t link_rate = 2'000'000;  // bit/s
  SimTime estimate_window = SimTime::seconds(1);

  bool operator==(const QueueConfig&) const = default;
};

struct DropCounters {
  std::uint64_t overflow_control = 0;
  std::uint64_t overflow_data = 0;
  std::uint64_t firewall = 0;
};

class OutboundQueue {
 public:
  using Firewall = std::function<bool(const wire::Packet&)>;  // true = reject

  explicit OutboundQueue(QueueConfig cfg = {}) : cfg_(cfg) {}

  void set_firewall(Firewall f) { firewall_ = std::move(f); }

  /// Firewall first, then drop-tail on the packet's class.
  EnqueueResult enqueue(wire::Packet p);

  /// Head of the control queue, else head of the data queue.
  std::optional<wire::Packet> dequeue();

  std::size_t occupancy(TrafficClass c) const { return queue(c).size(); }
  bool empty() const { return control_.empty() && data_.empty(); }
  const DropCounters& drops() const { return drops_; }
  const QueueConfig& config() const { return cfg_; }

  /// Serialization delay of `bytes` at the configured link rate.
  SimTime transmission_time(std::size_t bytes) const;

  /// Packets currently queued, control class first.
  template <class F>
  void for_each(F&& f) const {
    for (const auto& p : control_) f(p);
    for (const auto& p : data_) f(p);
  }

 private:
  std::deque<wire::Packet>& queue(TrafficClass c) { return c == TrafficClass::control ? control_ : data_; }
  const std::deque<wire::Packet>& queue(TrafficClass c) const {
    return c == TrafficClass::control ? control_ : data_;
  }

  QueueConfig cfg_;
  std::deque<wire::Packet> control_;
  std::deque<wire::Packet> data_;
  DropCounters drops_;
  Firewall firewall_;
};

struct BandwidthEstimate {
  SimTime window;
  std::uint64_t bytes_sent_in_window = 0;
  double estimate = 0.0;  // bit/s
};

/// Passive estimate of the outbound rate from completed transmissions.
class BandwidthEstimator {
 public:
  explicit BandwidthEstimator(SimTime window = SimTime::seconds(1), std::uint64_t link_rate = 2'000'000)
      : window_(window), link_rate_(link_rate) {}

  void record(SimTime completed_at, std::size_t bytes);

  /// Bytes completed in (now - window, now], times 8, over the window;
  /// capped at the link rate.
  BandwidthEstimate estimate(SimTime now) const;

 private:
  SimTime window_;
  std::uint64_t link_rate_;
  std::deque<std::pair<SimTime, std::size_t>> history_;
};

}  // namespace qmanet::link
