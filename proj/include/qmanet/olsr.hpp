#pragma once

// Per-node OLSR state: neighbor sensing, MPR selection, MPR-restricted
// flooding, topology maintenance and blacklist-aware shortest-path routing.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "qmanet/sim_kernel.hpp"
#include "qmanet/types.hpp"
#include "qmanet/wire.hpp"

namespace qmanet::olsr {

using wire::HelloMessage;
using wire::LinkStatus;
using wire::TcMessage;

struct OlsrConfig {
  SimTime hello_interval = SimTime::seconds(2);
  SimTime tc_interval = SimTime::seconds(5);
  SimTime neighb_hold = SimTime::seconds(6);
  SimTime top_hold = SimTime::seconds(15);
  SimTime dup_hold = SimTime::seconds(30);
  std::uint8_t ttl = 255;
  double hello_jitter = 0.1;  // fraction of the interval

  bool operator==(const OlsrConfig&) const = default;
};

struct NeighborEntry {
  LinkStatus status = LinkStatus::heard;
  SimTime expires;
};

struct MprSet {
  std::set<NodeId> members;
  std::uint32_t seq_num = 0;
};

struct TopologyTuple {
  NodeId dest;
  NodeId last_hop;
  std::uint32_t ansn = 0;
  SimTime expires;
};

struct AnsnRecord {
  std::uint32_t ansn = 0;
  SimTime expires;
};

/// `retransmitted` separates "already processed" from "already forwarded":
/// a copy first heard from a non-selector may still be forwarded when a later
/// copy arrives from a selector, but never twice.
struct DuplicateEntry {
  NodeId origin;
  std::uint32_t seq = 0;
  bool retransmitted = false;
  SimTime expires;
};

struct RouteEntry {
  NodeId next_hop;
  unsigned hop_count = 0;
  std::vector<NodeId> path;  // next_hop ... destination

  bool operator==(const RouteEntry&) const = default;
};

using RoutingTable = std::map<NodeId, RouteEntry>;

enum class BlacklistReason : std::uint8_t { auth_failure, honeypot_confirmed };

struct BlacklistEntry {
  NodeId node;
  BlacklistReason reason = BlacklistReason::auth_failure;
  SimTime since;
};

struct OlsrCounters {
  std::uint64_t malformed_hello = 0;
  std::uint64_t stale_tc = 0;
  std::uint64_t mpr_recomputations = 0;
  std::uint64_t route_recomputations = 0;
};

/// Undirected adjacency.
using Graph = std::map<NodeId, std::set<NodeId>>;

struct NodeState {
  NodeState() = default;
  explicit NodeState(NodeId id, OlsrConfig cfg = {}) : self(id), config(cfg) {}

  NodeId self;
  OlsrConfig config;

  std::map<NodeId, NeighborEntry> neighbors;
  std::map<NodeId, std::set<NodeId>> two_hop;  // symmetric neighbor -> its symmetric neighbors
  MprSet mprs;
  std::map<NodeId, SimTime> selectors;  // neighbors that chose us as MPR
  std::map<std::pair<NodeId, NodeId>, TopologyTuple> topology;  // keyed (last_hop, dest)
  std::map<NodeId, AnsnRecord> ansn_seen;
  std::map<std::pair<NodeId, std::uint32_t>, DuplicateEntry> duplicates;
  std::map<NodeId, BlacklistEntry> blacklist;
  RoutingTable routes;

  std::uint32_t ansn = 0;
  bool advertised_once = false;
  std::set<NodeId> last_advertised;

  SimTime next_hello;
  SimTime next_tc;

  OlsrCounters counters;

  bool is_blacklisted(NodeId n) const { return blacklist.contains(n); }
  bool is_symmetric(NodeId n) const;
  std::set<NodeId> symmetric_neighbors() const;
};

/// Greedy cover of the strict 2-hop set. Sole reachers go in first, then the
/// neighbor covering the most uncovered nodes (lowest id on ties) until
/// nothing coverable is left. seq_num advances iff membership changed.
MprSet select_mprs(const std::set<NodeId>& one_hop, const std::map<NodeId, std::set<NodeId>>& two_hop_reach,
                   const MprSet& previous = {});

/// Inputs to select_mprs derived from the node's tables: symmetric,
/// non-blacklisted neighbors and the strict 2-hop nodes each one reaches.
std::pair<std::set<NodeId>, std::map<NodeId, std::set<NodeId>>> mpr_inputs(const NodeState& state);

void recompute_mprs(NodeState& state);
void recompute_routes(NodeState& state);

/// Returns false if the message was discarded (own, blacklisted origin, or a
/// neighbor list naming its own origin).
bool process_hello(NodeState& state, const HelloMessage& msg, SimTime now);

/// Records (origin, seq) as seen. True on the first reception, i.e. when the
/// message should be processed locally.
bool first_reception(NodeState& state, NodeId origin, std::uint32_t seq, SimTime now);

/// MPR forwarding rule. On true the entry is marked retransmitted and the
/// packet's ttl is decremented.
bool should_forward(NodeState& state, wire::Packet& packet, NodeId sender, SimTime now);

/// Returns true when the topology set changed.
bool process_tc(NodeState& state, const TcMessage& msg, SimTime now);

/// Graph of everything the node knows: its own symmetric links, the 2-hop
/// links reported by neighbors and the advertised topology. Blacklisted nodes
/// are left out entirely.
Graph known_graph(const NodeState& state);

/// BFS tree from `source` where each node's path is the lexicographically
/// smallest among its shortest paths. Nodes in `avoid` are never entered.
std::map<NodeId, std::vector<NodeId>> shortest_paths(const Graph& graph, NodeId source,
                                                     const std::set<NodeId>& avoid = {});

RoutingTable compute_routes(const NodeState& state);

using ControlMessage = std::variant<HelloMessage, TcMessage>;

/// Arms the HELLO and TC timers at `start` plus a jitter of up to
/// `hello_jitter` of each interval drawn from `rng`.
void start_timers(NodeState& state, SimTime start, Rng& rng);

SimTime next_emission(const NodeState& state);

HelloMessage make_hello(const NodeState& state);

/// TC advertising the current selector set. The ANSN advances whenever the
/// advertised set differs from the previous TC.
TcMessage make_tc(NodeState& state);

/// Emits what is due at `now`: a HELLO each hello_interval, and a TC each
/// tc_interval but only while the selector set is non-empty.
std::vector<ControlMessage> periodic_emission(NodeState& state, SimTime now);

/// Drops expired neighbor, selector, topology and duplicate entries and
/// recomputes MPRs/routes as needed. Returns true if anything was removed.
bool expire(NodeState& state, SimTime now);

/// Adds `node` to the blacklist and purges it from every table. Returns false
/// for self or a node already listed.
bool blacklist_node(NodeState& state, NodeId node, BlacklistReason reason, SimTime now);

}  // namespace qmanet::olsr
