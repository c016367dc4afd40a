#pragma once

// QoS accounting. The simulator writes a Trace; finalize_report turns it into
// per-flow and aggregate metrics without looking at simulator state.
//
// A "unit" is one DATA packet transmission attempt by a flow source,
// identified by the source's packet sequence number. Every retransmission is
// a new unit. A unit ends in exactly one fate: delivered, dropped (by cause),
// or still in flight when the run ends.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmanet/types.hpp"

namespace qmanet::metrics {

enum class DropCause : std::uint8_t { overflow, firewall, blackhole, integrity, ttl, no_route };
inline constexpr std::size_t kDropCauses = 6;

std::string to_string(DropCause cause);

struct FlowDescriptor {
  std::uint32_t id = 0;
  NodeId src;
  NodeId dst;
  std::string kind;  // "bulk" or "streaming"
  SimTime start;
  bool admitted = false;
  std::string rejection;  // empty when admitted
};

enum class UnitEvent : std::uint8_t { sent, delivered, dropped, in_flight };

struct UnitRecord {
  UnitEvent event = UnitEvent::sent;
  SimTime time;
  std::uint32_t flow = 0;
  std::uint32_t unit = 0;
  std::uint32_t bytes = 0;  // application payload bytes
  DropCause cause = DropCause::overflow;  // dropped only
};

struct CwndSample {
  SimTime time;
  double cwnd = 0.0;
  double ssthresh = 0.0;
  std::string phase;
  std::string event;
};

struct BlacklistEvent {
  SimTime time;
  NodeId node;     // who blacklisted
  NodeId suspect;  // who was blacklisted
  std::string reason;
};

struct NodeCounters {
  NodeId node;
  std::uint64_t overflow_control = 0;
  std::uint64_t overflow_data = 0;
  std::uint64_t firewall = 0;
  std::uint64_t transmitted_packets = 0;
  std::uint64_t recovered_bytes = 0;  // plaintext an eavesdropper could read
};

struct Trace {
  SimTime duration;
  std::vector<FlowDescriptor> flows;
  std::vector<UnitRecord> units;  // in simulation order
  std::map<std::uint32_t, std::vector<CwndSample>> cwnd;
  std::map<std::uint32_t, std::uint64_t> payload_mismatches;
  std::vector<BlacklistEvent> blacklist;
  std::vector<NodeCounters> nodes;
  std::uint64_t control_bytes = 0;
  std::uint64_t data_bytes = 0;
  std::uint64_t digest = 0;  // hash over the packet trace
};

struct FlowMetrics {
  std::uint32_t id = 0;
  NodeId src;
  NodeId dst;
  std::string kind;
  bool admitted = false;
  std::string rejection;
  std::uint64_t sent = 0;
  std::uint64_t delivered = 0;
  std::uint64_t in_flight = 0;
  std::array<std::uint64_t, kDropCauses> drops{};
  std::uint64_t delivered_bytes = 0;
  std::uint64_t payload_mismatches = 0;
  double pdr = 0.0;
  double mean_delay = 0.0;  // seconds
  double jitter = 0.0;      // seconds
  double throughput = 0.0;  // bit/s

  std::uint64_t drop_count(DropCause c) const { return drops[static_cast<std::size_t>(c)]; }
  std::uint64_t total_drops() const;
};

struct MetricsReport {
  SimTime duration;
  std::vector<FlowMetrics> flows;
  FlowMetrics aggregate;
  std::uint64_t control_bytes = 0;
  std::uint64_t data_bytes = 0;
  double control_overhead = 0.0;  // control bytes / all bytes transmitted
  std::map<std::uint32_t, std::vector<CwndSample>> cwnd;
  std::vector<BlacklistEvent> blacklist;
  std::vector<NodeCounters> nodes;
  std::uint64_t digest = 0;
};

/// Broken bookkeeping: a unit with no fate, two fates, or a fate but no send.
class AccountingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Pure function of the trace. pdr = delivered / sent (0 when nothing was
/// sent); delay runs from the send record to the delivery record; jitter is
/// the mean absolute difference of consecutive delays in delivery order;
/// throughput is delivered payload bits over the run duration. Throws
/// AccountingError unless sent = delivered + drops + in_flight per flow.
MetricsReport finalize_report(const Trace& trace);

std::string to_csv(const MetricsReport& report);
std::string to_json(const MetricsReport& report);

// ---------------------------------------------------------------------------
// Admission control
// ---------------------------------------------------------------------------

struct AdmissionPolicy {
  std::uint32_t capacity = 4;        // concurrent flows per source
  double reservation_bps = 200'000;  // bandwidth each flow must find free
  double link_rate_bps = 2'000'000;
};

struct AdmissionDecision {
  bool admitted = false;
  std::string reason;  // why it was rejected
};

/// Checked once at flow start and never retried.
AdmissionDecision admit_flow(const AdmissionPolicy& policy, std::uint32_t active_flows_at_src, bool route_exists,
                             double estimated_use_bps);

}  // namespace qmanet::metrics
