#include "qmanet/newreno.hpp"

#include <algorithm>
#include <cmath>

namespace qmanet::transport {

std::string to_string(CongestionPhase phase) {
  switch (phase) {
    case CongestionPhase::slow_start: return "slow_start";
    case CongestionPhase::congestion_avoidance: return "congestion_avoidance";
    case CongestionPhase::fast_recovery: return "fast_recovery";
  }
  return "?";
}

std::string to_string(AckKind kind) {
  switch (kind) {
    case AckKind::old: return "old";
    case AckKind::duplicate: return "dup_ack";
    case AckKind::fast_retransmit: return "fast_retransmit";
    case AckKind::partial: return "partial_ack";
    case AckKind::full: return "full_ack";
    case AckKind::new_data: return "new_ack";
  }
  return "?";
}

CwndState initial_state(const NewRenoConfig& cfg) {
  CwndState s;
  s.cwnd = std::max(1.0, cfg.initial_cwnd);
  s.ssthresh = std::max(2.0, cfg.initial_ssthresh);
  s.smss = cfg.smss;
  s.rto = cfg.initial_rto;
  return s;
}

AckResult on_ack(CwndState& s, std::uint32_t ack, const NewRenoConfig& cfg) {
  AckResult r;
  r.cwnd_before = s.cwnd;
  if (ack < s.snd_una || ack > s.snd_max) return r;

  if (ack == s.snd_una) {
    if (s.snd_max == s.snd_una) return r;  // nothing outstanding: a window update, not a dup
    ++s.dup_acks;
    r.kind = AckKind::duplicate;
    if (s.phase == CongestionPhase::fast_recovery) {
      s.cwnd += 1.0;
      return r;
    }
    const bool may_recover = cfg.reno_mode || s.snd_una >= s.recover;
    if (s.dup_acks == 3 && may_recover) {
      s.ssthresh = std::max(s.cwnd / 2.0, 2.0);
      s.recover = s.snd_nxt;
      s.cwnd = s.ssthresh + 3.0;
      s.phase = CongestionPhase::fast_recovery;
      r.kind = AckKind::fast_retransmit;
      r.retransmit = s.snd_una;
    }
    return r;
  }

  r.newly_acked = ack - s.snd_una;
  s.snd_una = ack;
  s.snd_nxt = std::max(s.snd_nxt, ack);
  s.dup_acks = 0;
  s.rto = cfg.initial_rto;

  if (s.phase == CongestionPhase::fast_recovery) {
    if (ack < s.recover && !cfg.reno_mode) {
      s.cwnd = std::max(1.0, s.cwnd - static_cast<double>(r.newly_acked) + 1.0);
      r.kind = AckKind::partial;
      r.retransmit = s.snd_una;
      return r;
    }
    s.cwnd = s.ssthresh;
    s.phase = CongestionPhase::congestion_avoidance;
    r.kind = ack < s.recover ? AckKind::partial : AckKind::full;
    return r;
  }

  r.kind = AckKind::new_data;
  if (s.phase == CongestionPhase::slow_start) {
    s.cwnd += 1.0;
    if (s.cwnd >= s.ssthresh) s.phase = CongestionPhase::congestion_avoidance;
  } else {
    s.cwnd += 1.0 / s.cwnd;
  }
  return r;
}

std::uint32_t on_timeout(CwndState& s, const NewRenoConfig& cfg) {
  s.ssthresh = std::max(s.cwnd / 2.0, 2.0);
  s.cwnd = 1.0;
  s.phase = CongestionPhase::slow_start;
  s.dup_acks = 0;
  s.recover = s.snd_max;
  s.snd_nxt = s.snd_una;
  s.rto = std::min(s.rto * 2, cfg.max_rto);
  return s.snd_una;
}

std::uint32_t can_send(const CwndState& s) {
  const auto window = static_cast<std::int64_t>(std::floor(s.cwnd));
  const auto flight = static_cast<std::int64_t>(s.in_flight());
  return static_cast<std::uint32_t>(std::max<std::int64_t>(0, window - flight));
}

void on_send(CwndState& s) {
  ++s.snd_nxt;
  s.snd_max = std::max(s.snd_max, s.snd_nxt);
}

}  // namespace qmanet::transport
