#include "qmanet/link_queue.hpp"

#include <algorithm>

namespace qmanet::link {

TrafficClass classify(const wire::Packet& p) {
  switch (p.kind) {
    case wire::PacketKind::hello:
    case wire::PacketKind::tc: return TrafficClass::control;
    case wire::PacketKind::data:
    case wire::PacketKind::ack: return TrafficClass::data;
  }
  return TrafficClass::data;
}

EnqueueResult OutboundQueue::enqueue(wire::Packet p) {
  if (firewall_ && firewall_(p)) {
    ++drops_.firewall;
    return EnqueueResult::dropped_firewall;
  }
  const TrafficClass c = classify(p);
  auto& q = queue(c);
  if (q.size() >= cfg_.capacity) {
    ++(c == TrafficClass::control ? drops_.overflow_control : drops_.overflow_data);
    return EnqueueResult::dropped_overflow;
  }
  q.push_back(std::move(p));
  return EnqueueResult::accepted;
}

std::optional<wire::Packet> OutboundQueue::dequeue() {
  for (auto* q : {&control_, &data_}) {
    if (!q->empty()) {
      wire::Packet p = std::move(q->front());
      q->pop_front();
      return p;
    }
  }
  return std::nullopt;
}

SimTime OutboundQueue::transmission_time(std::size_t bytes) const {
  // Rounded up to the next microsecond so a transmission never takes zero time.
  const std::uint64_t bits = static_cast<std::uint64_t>(bytes) * 8;
  return SimTime{(bits * 1'000'000 + cfg_.link_rate - 1) / cfg_.link_rate};
}

void BandwidthEstimator::record(SimTime completed_at, std::size_t bytes) {
  history_.emplace_back(completed_at, bytes);
  while (!history_.empty() && history_.front().first + window_ * 4 < completed_at) history_.pop_front();
}

BandwidthEstimate BandwidthEstimator::estimate(SimTime now) const {
  BandwidthEstimate e;
  e.window = window_;
  const SimTime start = now - window_;
  for (const auto& [t, bytes] : history_) {
    const bool inside = t <= now && (t > start || (now < window_ && t >= start));
    if (inside) e.bytes_sent_in_window += bytes;
  }
  e.estimate = std::min(static_cast<double>(e.bytes_sent_in_window) * 8.0 / window_.to_seconds(),
                        static_cast<double>(link_rate_));
  return e;
}

}  // namespace qmanet::link
