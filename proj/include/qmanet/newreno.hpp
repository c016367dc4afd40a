#pragma once

// New Reno congestion control, window arithmetic in whole segments.
// Sequence numbers count segments, not bytes; SMSS only converts to bytes.

#include <cstdint>
#include <optional>
#include <string>

#include "qmanet/types.hpp"

namespace qmanet::transport {

enum class CongestionPhase : std::uint8_t { slow_start, congestion_avoidance, fast_recovery };

std::string to_string(CongestionPhase phase);

struct NewRenoConfig {
  double initial_cwnd = 2.0;
  double initial_ssthresh = 64.0;
  SimTime initial_rto = SimTime::seconds(1);
  SimTime max_rto = SimTime::seconds(16);
  std::uint32_t smss = 1200;
  bool reno_mode = false;  // plain Reno: a partial ACK ends recovery

  bool operator==(const NewRenoConfig&) const = default;
};

struct CwndState {
  double cwnd = 2.0;
  double ssthresh = 64.0;
  CongestionPhase phase = CongestionPhase::slow_start;
  std::uint32_t dup_acks = 0;
  std::uint32_t recover = 0;
  std::uint32_t snd_una = 0;
  std::uint32_t snd_nxt = 0;
  std::uint32_t snd_max = 0;  // highest sequence ever sent + 1
  std::uint32_t smss = 1200;
  SimTime rto = SimTime::seconds(1);

  std::uint32_t in_flight() const { return snd_nxt - snd_una; }
};

CwndState initial_state(const NewRenoConfig& cfg);

enum class AckKind : std::uint8_t {
  old,              // below snd_una or beyond anything sent; ignored
  duplicate,        // dup ACK that does not change phase
  fast_retransmit,  // third dup ACK, recovery entered
  partial,          // recovery continues, next hole retransmitted
  full,             // recovery finished
  new_data,         // ordinary cumulative advance
};

std::string to_string(AckKind kind);

struct AckResult {
  AckKind kind = AckKind::old;
  std::optional<std::uint32_t> retransmit;
  std::uint32_t newly_acked = 0;
  /// cwnd before the event; for partial ACKs the caller can check
  /// cwnd_after == cwnd_before - newly_acked + 1 (bounded below by 1).
  double cwnd_before = 0.0;
};

/// Handles a cumulative ACK (`ack` = next segment the receiver expects).
///  - duplicate: dup_acks+1; on the third, ssthresh = max(cwnd/2, 2),
///    recover = snd_nxt, cwnd = ssthresh + 3, retransmit snd_una. Further
///    duplicates during recovery inflate cwnd by one segment.
///  - partial (recovery, ack < recover): cwnd = cwnd - acked + 1, retransmit
///    the next hole.
///  - full (recovery, ack >= recover): cwnd = ssthresh, congestion avoidance.
///  - new data: +1 per ACK in slow start, +1/cwnd in congestion avoidance.
/// After a timeout, recovery is not re-entered until snd_una passes the
/// `recover` mark set by the timeout.
AckResult on_ack(CwndState& state, std::uint32_t ack, const NewRenoConfig& cfg);

/// Retransmission timeout: ssthresh = max(cwnd/2, 2), cwnd = 1, slow start,
/// go back to snd_una, RTO doubled up to max_rto. Returns the segment to
/// retransmit (snd_una).
std::uint32_t on_timeout(CwndState& state, const NewRenoConfig& cfg);

/// Segments that may be sent now: max(0, floor(cwnd) - in_flight).
std::uint32_t can_send(const CwndState& state);

/// Records transmission of the segment at snd_nxt.
void on_send(CwndState& state);

}  // namespace qmanet::transport
