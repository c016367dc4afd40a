#pragma once

// Keying overlay on top of OLSR: every sealed unicast packet may travel twice,
// once along the routed path and once through a trusted alternate relay. The
// destination keeps the first copy whose tag verifies and never releases an
// unverified one. Nodes that fail control-message authentication are fed a
// decoy HELLO and blacklisted.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qmanet/aes.hpp"
#include "qmanet/olsr.hpp"
#include "qmanet/wire.hpp"

namespace qmanet::relay {

struct RelayPlan {
  NodeId primary_next_hop;
  std::vector<NodeId> primary_path;  // next_hop ... destination
  std::optional<NodeId> alternate_relay;
  std::vector<NodeId> alternate_path;  // first hop ... destination; empty without a relay
};

/// Primary next hop from the routing table. The alternate relay is the
/// lowest-id source MPR, failing that the lowest-id node adjacent to the
/// destination, through which a path exists that shares no intermediate node
/// with the primary path. Returns std::nullopt when there is no route.
std::optional<RelayPlan> plan_relay(const olsr::NodeState& state, NodeId dst);

enum class IngestOutcome : std::uint8_t { deliver, discard_duplicate, quarantine };

struct ReceivedCopy {
  Bytes payload;
  bool verified = false;
  SimTime arrival;
};

struct ReassemblyEntry {
  NodeId origin;
  std::uint32_t seq = 0;
  ReceivedCopy first_copy;
  bool delivered = false;
  SimTime expires;
};

struct IngestResult {
  IngestOutcome outcome = IngestOutcome::discard_duplicate;
  Bytes payload;  // set only for deliver
};

class ReassemblyTable {
 public:
  explicit ReassemblyTable(SimTime hold = SimTime::seconds(2)) : hold_(hold) {}

  SimTime hold() const { return hold_; }
  const ReassemblyEntry* find(NodeId origin, std::uint32_t seq) const;
  std::size_t size() const { return entries_.size(); }
  std::uint64_t integrity_blocked() const { return integrity_blocked_; }

  /// Removes entries whose hold expired. Returns the (origin, seq) of every
  /// removed entry that never saw a verified copy; each is counted as
  /// integrity-blocked.
  std::vector<std::pair<NodeId, std::uint32_t>> expire(SimTime now);

 private:
  friend IngestResult ingest_at_destination(ReassemblyTable&, const wire::Packet&, const aes::PacketKey&, SimTime);

  SimTime hold_;
  std::map<std::pair<NodeId, std::uint32_t>, ReassemblyEntry> entries_;
  std::deque<std::pair<SimTime, std::pair<NodeId, std::uint32_t>>> order_;
  std::uint64_t integrity_blocked_ = 0;
};

/// Opens the packet and decides: the first verified copy is delivered, later
/// copies of the same (origin, seq) are duplicates, and an unverified copy
/// with no verified one yet is quarantined until the hold expires.
IngestResult ingest_at_destination(ReassemblyTable& table, const wire::Packet& packet, const aes::PacketKey& key,
                                   SimTime now);

/// Decoy HELLO sent to a node whose control message failed authentication.
/// It names the suspect as an MPR but the suspect is never used to forward.
struct Honeypot {
  wire::HelloMessage decoy;
  NodeId suspect;
};

/// Blacklists `suspect` (reason honeypot_confirmed) and returns the decoy to
/// send. Returns std::nullopt for self and for nodes already blacklisted.
std::optional<Honeypot> honeypot_blacklist(olsr::NodeState& state, NodeId suspect, SimTime now);

/// Nonce used to seal a packet: (origin, seq).
inline aes::Nonce nonce_for(const wire::Packet& p) { return aes::Nonce{p.origin, p.seq}; }

}  // namespace qmanet::relay
