#pragma once

// Reference New Reno sender written directly from the textbook state machine
// (RFC 5681 + RFC 6582, counted in whole segments), kept separate from the
// library so the two can be checked against each other. The phase is derived
// from cwnd and ssthresh instead of being stored, except for recovery.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>

namespace oracle {

class RefNewReno {
 public:
  struct Params {
    double cwnd = 2.0;
    double ssthresh = 64.0;
    std::uint64_t rto_us = 1'000'000;
    std::uint64_t max_rto_us = 16'000'000;
  };

  explicit RefNewReno(Params p) : p_(p), cwnd_(p.cwnd), ssthresh_(p.ssthresh), rto_us_(p.rto_us) {}

  double cwnd() const { return cwnd_; }
  double ssthresh() const { return ssthresh_; }
  std::uint32_t una() const { return una_; }
  std::uint32_t nxt() const { return nxt_; }
  std::uint32_t max_sent() const { return high_; }
  std::uint64_t rto_us() const { return rto_us_; }
  bool recovering() const { return in_recovery_; }

  std::string phase() const {
    if (in_recovery_) return "fast_recovery";
    return cwnd_ < ssthresh_ ? "slow_start" : "congestion_avoidance";
  }

  std::uint32_t window_room() const {
    const auto w = static_cast<long long>(cwnd_);  // floor for positive values
    const auto used = static_cast<long long>(nxt_ - una_);
    return w > used ? static_cast<std::uint32_t>(w - used) : 0;
  }

  void sent_one() {
    ++nxt_;
    if (nxt_ > high_) high_ = nxt_;
  }

  struct Outcome {
    std::string event;  // same vocabulary as the library trace
    std::optional<std::uint32_t> retransmit;
  };

  Outcome ack(std::uint32_t a) {
    if (a < una_ || a > high_) return {"old", {}};

    if (a == una_) {
      if (high_ == una_) return {"old", {}};
      ++dupacks_;
      if (in_recovery_) {
        cwnd_ += 1.0;  // each extra dup ACK means another segment left the network
        return {"dup_ack", {}};
      }
      if (dupacks_ == 3 && una_ >= recover_) {
        ssthresh_ = std::max(cwnd_ / 2.0, 2.0);
        cwnd_ = ssthresh_ + 3.0;
        recover_ = nxt_;
        in_recovery_ = true;
        return {"fast_retransmit", una_};
      }
      return {"dup_ack", {}};
    }

    const std::uint32_t acked = a - una_;
    una_ = a;
    if (nxt_ < una_) nxt_ = una_;
    dupacks_ = 0;
    rto_us_ = p_.rto_us;

    if (in_recovery_) {
      if (a >= recover_) {
        cwnd_ = ssthresh_;
        in_recovery_ = false;
        return {"full_ack", {}};
      }
      cwnd_ = cwnd_ - acked + 1.0;
      if (cwnd_ < 1.0) cwnd_ = 1.0;
      return {"partial_ack", una_};
    }

    if (cwnd_ < ssthresh_)
      cwnd_ += 1.0;
    else
      cwnd_ += 1.0 / cwnd_;
    return {"new_ack", {}};
  }

  void timeout() {
    ssthresh_ = std::max(cwnd_ / 2.0, 2.0);
    cwnd_ = 1.0;
    in_recovery_ = false;
    dupacks_ = 0;
    recover_ = high_;
    nxt_ = una_;
    rto_us_ = std::min(rto_us_ * 2, p_.max_rto_us);
  }

 private:
  Params p_;
  double cwnd_;
  double ssthresh_;
  std::uint64_t rto_us_;
  std::uint32_t una_ = 0;
  std::uint32_t nxt_ = 0;
  std::uint32_t high_ = 0;
  std::uint32_t recover_ = 0;
  std::uint32_t dupacks_ = 0;
  bool in_recovery_ = false;
};

}  // namespace oracle
