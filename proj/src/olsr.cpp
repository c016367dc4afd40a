#include "qmanet/olsr.hpp"

#include <algorithm>
#include <deque>
#include <optional>

namespace qmanet::olsr {

bool NodeState::is_symmetric(NodeId n) const {
  auto it = neighbors.find(n);
  return it != neighbors.end() && it->second.status == LinkStatus::symmetric;
}

std::set<NodeId> NodeState::symmetric_neighbors() const {
  std::set<NodeId> out;
  for (const auto& [id, e] : neighbors)
    if (e.status == LinkStatus::symmetric) out.insert(id);
  return out;
}

MprSet select_mprs(const std::set<NodeId>& one_hop, const std::map<NodeId, std::set<NodeId>>& two_hop_reach,
                   const MprSet& previous) {
  std::map<NodeId, std::set<NodeId>> reach;
  for (auto n : one_hop) {
    auto it = two_hop_reach.find(n);
    if (it != two_hop_reach.end() && !it->second.empty()) reach.emplace(n, it->second);
  }

  std::set<NodeId> uncovered;
  std::map<NodeId, std::vector<NodeId>> reachers;
  for (const auto& [n, targets] : reach) {
    for (auto x : targets) {
      uncovered.insert(x);
      reachers[x].push_back(n);
    }
  }

  std::set<NodeId> members;
  for (const auto& [x, by] : reachers)
    if (by.size() == 1) members.insert(by.front());
  for (auto m : members)
    for (auto x : reach[m]) uncovered.erase(x);

  while (!uncovered.empty()) {
    NodeId best{};
    std::size_t best_count = 0;
    for (const auto& [n, targets] : reach) {
      if (members.contains(n)) continue;
      const auto count = static_cast<std::size_t>(
          std::count_if(targets.begin(), targets.end(), [&](NodeId x) { return uncovered.contains(x); }));
      if (count > best_count) {  // strict: the lowest id wins ties
        best = n;
        best_count = count;
      }
    }
    if (best_count == 0) break;
    members.insert(best);
    for (auto x : reach[best]) uncovered.erase(x);
  }

  MprSet out;
  out.seq_num = previous.seq_num + (members != previous.members ? 1 : 0);
  out.members = std::move(members);
  return out;
}

std::pair<std::set<NodeId>, std::map<NodeId, std::set<NodeId>>> mpr_inputs(const NodeState& state) {
  std::set<NodeId> one_hop;
  for (auto n : state.symmetric_neighbors())
    if (!state.is_blacklisted(n)) one_hop.insert(n);

  std::map<NodeId, std::set<NodeId>> reach;
  for (auto n : one_hop) {
    auto it = state.two_hop.find(n);
    if (it == state.two_hop.end()) continue;
    std::set<NodeId> strict;
    for (auto x : it->second)
      if (x != state.self && !one_hop.contains(x) && !state.is_blacklisted(x)) strict.insert(x);
    reach.emplace(n, std::move(strict));
  }
  return {std::move(one_hop), std::move(reach)};
}

void recompute_mprs(NodeState& state) {
  const auto [one_hop, reach] = mpr_inputs(state);
  state.mprs = select_mprs(one_hop, reach, state.mprs);
  ++state.counters.mpr_recomputations;
}

void recompute_routes(NodeState& state) {
  state.routes = compute_routes(state);
  ++state.counters.route_recomputations;
}

bool process_hello(NodeState& state, const HelloMessage& msg, SimTime now) {
  if (msg.origin == state.self || state.is_blacklisted(msg.origin)) return false;
  for (const auto& n : msg.neighbors) {
    if (n.id == msg.origin) {
      ++state.counters.malformed_hello;
      return false;
    }
  }

  // Only the sender's own entries can change here.
  const bool sym_before = state.is_symmetric(msg.origin);
  std::optional<std::set<NodeId>> two_before;
  if (auto it = state.two_hop.find(msg.origin); it != state.two_hop.end()) two_before = it->second;

  const bool lists_us = std::any_of(msg.neighbors.begin(), msg.neighbors.end(),
                                    [&](const wire::HelloNeighbor& n) { return n.id == state.self; });
  auto& entry = state.neighbors[msg.origin];
  entry.status = lists_us ? LinkStatus::symmetric : LinkStatus::heard;
  entry.expires = now + state.config.neighb_hold;

  if (entry.status == LinkStatus::symmetric) {
    std::set<NodeId> reached;
    for (const auto& n : msg.neighbors)
      if (n.status == LinkStatus::symmetric && n.id != state.self && !state.is_blacklisted(n.id)) reached.insert(n.id);
    state.two_hop[msg.origin] = std::move(reached);
  } else {
    state.two_hop.erase(msg.origin);
  }

  const bool chose_us = std::find(msg.mpr_selection.begin(), msg.mpr_selection.end(), state.self) !=
                        msg.mpr_selection.end();
  if (chose_us && entry.status == LinkStatus::symmetric)
    state.selectors[msg.origin] = now + state.config.neighb_hold;
  else
    state.selectors.erase(msg.origin);

  std::optional<std::set<NodeId>> two_after;
  if (auto it = state.two_hop.find(msg.origin); it != state.two_hop.end()) two_after = it->second;
  if (state.is_symmetric(msg.origin) != sym_before || two_after != two_before) {
    recompute_mprs(state);
    recompute_routes(state);
  }
  return true;
}

bool first_reception(NodeState& state, NodeId origin, std::uint32_t seq, SimTime now) {
  const auto [it, inserted] =
      state.duplicates.try_emplace({origin, seq}, DuplicateEntry{origin, seq, false, now + state.config.dup_hold});
  return inserted;
}

bool should_forward(NodeState& state, wire::Packet& packet, NodeId sender, SimTime now) {
  auto [it, inserted] = state.duplicates.try_emplace(
      {packet.origin, packet.seq}, DuplicateEntry{packet.origin, packet.seq, false, now + state.config.dup_hold});
  auto& entry = it->second;
  if (entry.retransmitted) return false;
  if (packet.ttl <= 1) return false;
  if (!state.selectors.contains(sender)) return false;
  entry.retransmitted = true;
  entry.expires = now + state.config.dup_hold;
  --packet.ttl;
  return true;
}

bool process_tc(NodeState& state, const TcMessage& msg, SimTime now) {
  if (msg.origin == state.self || state.is_blacklisted(msg.origin)) return false;

  auto seen = state.ansn_seen.find(msg.origin);
  if (seen != state.ansn_seen.end() && msg.ansn < seen->second.ansn) {
    ++state.counters.stale_tc;
    return false;
  }

  const SimTime expires = now + state.config.top_hold;
  std::set<NodeId> before;
  for (auto it = state.topology.lower_bound({msg.origin, NodeId{0}});
       it != state.topology.end() && it->first.first == msg.origin; ++it)
    before.insert(it->first.second);

  const std::set<NodeId> advertised(msg.advertised.begin(), msg.advertised.end());
  const bool newer = seen == state.ansn_seen.end() || msg.ansn > seen->second.ansn;
  if (newer) {
    for (auto n : before) state.topology.erase({msg.origin, n});
  }
  for (auto dest : advertised) state.topology[{msg.origin, dest}] = TopologyTuple{dest, msg.origin, msg.ansn, expires};
  state.ansn_seen[msg.origin] = AnsnRecord{msg.ansn, expires};

  std::set<NodeId> after;
  for (auto it = state.topology.lower_bound({msg.origin, NodeId{0}});
       it != state.topology.end() && it->first.first == msg.origin; ++it)
    after.insert(it->first.second);

  if (after == before) return false;
  recompute_routes(state);
  return true;
}

Graph known_graph(const NodeState& state) {
  Graph g;
  auto link = [&](NodeId a, NodeId b) {
    if (a == b || state.is_blacklisted(a) || state.is_blacklisted(b)) return;
    g[a].insert(b);
    g[b].insert(a);
  };
  // Only the neighbor table may create edges at this node.
  for (auto n : state.symmetric_neighbors()) link(state.self, n);
  for (const auto& [n, reached] : state.two_hop) {
    if (!state.is_symmetric(n)) continue;
    for (auto x : reached)
      if (x != state.self) link(n, x);
  }
  for (const auto& [key, tuple] : state.topology) {
    if (tuple.last_hop == state.self || tuple.dest == state.self) continue;
    link(tuple.last_hop, tuple.dest);
  }
  return g;
}

std::map<NodeId, std::vector<NodeId>> shortest_paths(const Graph& graph, NodeId source, const std::set<NodeId>& avoid) {
  // FIFO order within a BFS level equals the lexicographic order of the paths
  // that reached each node, so first discovery yields the smallest path.
  std::map<NodeId, NodeId> parent;
  std::deque<NodeId> frontier{source};
  std::set<NodeId> visited{source};
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop_front();
    auto it = graph.find(u);
    if (it == graph.end()) continue;
    for (auto v : it->second) {
      if (visited.contains(v) || avoid.contains(v)) continue;
      visited.insert(v);
      parent[v] = u;
      frontier.push_back(v);
    }
  }

  std::map<NodeId, std::vector<NodeId>> paths;
  for (const auto& [dest, p] : parent) {
    std::vector<NodeId> path{dest};
    for (NodeId cur = p; cur != source; cur = parent.at(cur)) path.push_back(cur);
    std::reverse(path.begin(), path.end());
    paths.emplace(dest, std::move(path));
  }
  return paths;
}

RoutingTable compute_routes(const NodeState& state) {
  // Same edges and the same lexicographic BFS as shortest_paths(known_graph()),
  // on a flat sorted adjacency because this runs after every topology change.
  std::vector<std::pair<NodeId, NodeId>> edges;
  auto link = [&](NodeId a, NodeId b) {
    if (a == b || state.is_blacklisted(a) || state.is_blacklisted(b)) return;
    edges.emplace_back(a, b);
    edges.emplace_back(b, a);
  };
  for (const auto& [n, e] : state.neighbors)
    if (e.status == LinkStatus::symmetric) link(state.self, n);
  for (const auto& [n, reached] : state.two_hop) {
    if (!state.is_symmetric(n)) continue;
    for (auto x : reached)
      if (x != state.self) link(n, x);
  }
  for (const auto& [key, tuple] : state.topology) {
    if (tuple.last_hop == state.self || tuple.dest == state.self) continue;
    link(tuple.last_hop, tuple.dest);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<NodeId> ids{state.self};
  for (const auto& e : edges) ids.push_back(e.first);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index = [&](NodeId n) { return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), n) - ids.begin()); };

  std::vector<std::size_t> start(ids.size() + 1, 0);
  for (const auto& e : edges) ++start[index(e.first) + 1];
  for (std::size_t i = 0; i < ids.size(); ++i) start[i + 1] += start[i];
  std::vector<std::size_t> target(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) target[k] = index(edges[k].second);  // edges sorted by source

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  const std::size_t src = index(state.self);
  std::vector<std::size_t> parent(ids.size(), none);
  std::vector<std::size_t> order;
  std::deque<std::size_t> frontier{src};
  parent[src] = src;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    for (std::size_t k = start[u]; k < start[u + 1]; ++k) {
      const std::size_t v = target[k];
      if (parent[v] != none) continue;
      parent[v] = u;
      order.push_back(v);
      frontier.push_back(v);
    }
  }

  RoutingTable table;
  for (std::size_t v : order) {
    RouteEntry e;
    for (std::size_t cur = v; cur != src; cur = parent[cur]) e.path.push_back(ids[cur]);
    std::reverse(e.path.begin(), e.path.end());
    e.next_hop = e.path.front();
    e.hop_count = static_cast<unsigned>(e.path.size());
    table.emplace(ids[v], std::move(e));
  }
  return table;
}

void start_timers(NodeState& state, SimTime start, Rng& rng) {
  auto jitter = [&](SimTime interval) {
    return SimTime{static_cast<std::uint64_t>(rng.uniform01() * state.config.hello_jitter *
                                              static_cast<double>(interval.ticks))};
  };
  state.next_hello = start + jitter(state.config.hello_interval);
  state.next_tc = start + jitter(state.config.tc_interval);
}

SimTime next_emission(const NodeState& state) { return std::min(state.next_hello, state.next_tc); }

HelloMessage make_hello(const NodeState& state) {
  HelloMessage m;
  m.origin = state.self;
  for (const auto& [id, e] : state.neighbors)
    if (!state.is_blacklisted(id)) m.neighbors.push_back({id, e.status});
  m.mpr_selection.assign(state.mprs.members.begin(), state.mprs.members.end());
  return m;
}

TcMessage make_tc(NodeState& state) {
  std::set<NodeId> advertised;
  for (const auto& [id, expires] : state.selectors)
    if (!state.is_blacklisted(id)) advertised.insert(id);
  if (!state.advertised_once || advertised != state.last_advertised) ++state.ansn;
  state.advertised_once = true;
  state.last_advertised = advertised;

  TcMessage m;
  m.origin = state.self;
  m.advertised.assign(advertised.begin(), advertised.end());
  m.ansn = state.ansn;
  m.ttl = state.config.ttl;
  return m;
}

std::vector<ControlMessage> periodic_emission(NodeState& state, SimTime now) {
  std::vector<ControlMessage> out;
  if (state.next_hello <= now) {
    out.emplace_back(make_hello(state));
    while (state.next_hello <= now) state.next_hello += state.config.hello_interval;
  }
  if (state.next_tc <= now) {
    if (!state.selectors.empty()) out.emplace_back(make_tc(state));
    while (state.next_tc <= now) state.next_tc += state.config.tc_interval;
  }
  return out;
}

bool expire(NodeState& state, SimTime now) {
  bool neighborhood = false;
  bool topology = false;

  for (auto it = state.neighbors.begin(); it != state.neighbors.end();) {
    if (it->second.expires < now) {
      state.two_hop.erase(it->first);
      state.selectors.erase(it->first);
      it = state.neighbors.erase(it);
      neighborhood = true;
    } else {
      ++it;
    }
  }
  std::erase_if(state.selectors, [&](const auto& kv) { return kv.second < now; });
  topology = std::erase_if(state.topology, [&](const auto& kv) { return kv.second.expires < now; }) > 0;
  std::erase_if(state.ansn_seen, [&](const auto& kv) { return kv.second.expires < now; });
  std::erase_if(state.duplicates, [&](const auto& kv) { return kv.second.expires < now; });

  if (neighborhood) recompute_mprs(state);
  if (neighborhood || topology) recompute_routes(state);
  return neighborhood || topology;
}

bool blacklist_node(NodeState& state, NodeId node, BlacklistReason reason, SimTime now) {
  if (node == state.self || state.is_blacklisted(node)) return false;
  state.blacklist.emplace(node, BlacklistEntry{node, reason, now});
  state.neighbors.erase(node);
  state.two_hop.erase(node);
  for (auto& [n, reached] : state.two_hop) reached.erase(node);
  state.selectors.erase(node);
  std::erase_if(state.topology,
                [&](const auto& kv) { return kv.second.last_hop == node || kv.second.dest == node; });
  state.ansn_seen.erase(node);
  recompute_mprs(state);
  recompute_routes(state);
  return true;
}

}  // namespace qmanet::olsr
