#include "qmanet/secure_relay.hpp"

namespace qmanet::relay {

namespace {

std::optional<std::vector<NodeId>> path_through(const olsr::Graph& graph, NodeId self, NodeId relay, NodeId dst,
                                                const std::set<NodeId>& forbidden) {
  std::set<NodeId> avoid = forbidden;
  avoid.insert(dst);
  const auto to_relay = olsr::shortest_paths(graph, self, avoid);
  auto leg1 = to_relay.find(relay);
  if (leg1 == to_relay.end()) return std::nullopt;

  avoid = forbidden;
  avoid.insert(self);
  for (auto n : leg1->second)
    if (n != relay) avoid.insert(n);
  const auto to_dst = olsr::shortest_paths(graph, relay, avoid);
  auto leg2 = to_dst.find(dst);
  if (leg2 == to_dst.end()) return std::nullopt;

  std::vector<NodeId> path = leg1->second;
  path.insert(path.end(), leg2->second.begin(), leg2->second.end());
  return path;
}

}  // namespace

std::optional<RelayPlan> plan_relay(const olsr::NodeState& state, NodeId dst) {
  auto route = state.routes.find(dst);
  if (route == state.routes.end()) return std::nullopt;

  RelayPlan plan;
  plan.primary_next_hop = route->second.next_hop;
  plan.primary_path = route->second.path;

  const std::set<NodeId> intermediates(plan.primary_path.begin(), plan.primary_path.end() - 1);
  const olsr::Graph graph = olsr::known_graph(state);

  auto eligible = [&](NodeId m) {
    return m != plan.primary_next_hop && m != dst && m != state.self && !intermediates.contains(m) &&
           !state.is_blacklisted(m);
  };

  std::vector<NodeId> candidates;
  for (auto m : state.mprs.members)
    if (eligible(m)) candidates.push_back(m);
  if (auto adj = graph.find(dst); adj != graph.end()) {
    for (auto m : adj->second)
      if (eligible(m) && !state.mprs.members.contains(m)) candidates.push_back(m);
  }

  for (auto m : candidates) {
    if (auto path = path_through(graph, state.self, m, dst, intermediates)) {
      plan.alternate_relay = m;
      plan.alternate_path = std::move(*path);
      break;
    }
  }
  return plan;
}

const ReassemblyEntry* ReassemblyTable::find(NodeId origin, std::uint32_t seq) const {
  auto it = entries_.find({origin, seq});
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::pair<NodeId, std::uint32_t>> ReassemblyTable::expire(SimTime now) {
  std::vector<std::pair<NodeId, std::uint32_t>> blocked;
  while (!order_.empty() && order_.front().first <= now) {
    const auto key = order_.front().second;
    order_.pop_front();
    auto it = entries_.find(key);
    if (it == entries_.end() || it->second.expires > now) continue;
    if (!it->second.delivered) {
      ++integrity_blocked_;
      blocked.push_back(key);
    }
    entries_.erase(it);
  }
  return blocked;
}

IngestResult ingest_at_destination(ReassemblyTable& table, const wire::Packet& packet, const aes::PacketKey& key,
                                   SimTime now) {
  const auto id = std::make_pair(packet.origin, packet.seq);
  auto it = table.entries_.find(id);
  if (it != table.entries_.end() && it->second.delivered) return {IngestOutcome::discard_duplicate, {}};

  auto opened = aes::open(packet.payload, packet.tag, key, nonce_for(packet), wire::authenticated_header(packet),
                          packet.encrypted());

  if (it == table.entries_.end()) {
    ReassemblyEntry entry;
    entry.origin = packet.origin;
    entry.seq = packet.seq;
    entry.first_copy = ReceivedCopy{opened ? *opened : packet.payload, opened.has_value(), now};
    entry.expires = now + table.hold_;
    it = table.entries_.emplace(id, std::move(entry)).first;
    table.order_.emplace_back(it->second.expires, id);
  }

  if (!opened) return {IngestOutcome::quarantine, {}};

  it->second.delivered = true;
  return {IngestOutcome::deliver, std::move(*opened)};
}

std::optional<Honeypot> honeypot_blacklist(olsr::NodeState& state, NodeId suspect, SimTime now) {
  if (suspect == state.self || state.is_blacklisted(suspect)) return std::nullopt;
  olsr::blacklist_node(state, suspect, olsr::BlacklistReason::honeypot_confirmed, now);

  Honeypot hp;
  hp.suspect = suspect;
  hp.decoy.origin = state.self;
  hp.decoy.neighbors = {wire::HelloNeighbor{suspect, wire::LinkStatus::symmetric}};
  hp.decoy.mpr_selection = {suspect};
  return hp;
}

}  // namespace qmanet::relay
