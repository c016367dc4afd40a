#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <variant>

#include "graph_oracles.hpp"
#include "qmanet/olsr.hpp"

using namespace qmanet;
using namespace qmanet::olsr;
using oracle::id;

namespace {

wire::HelloMessage hello(int origin, std::vector<std::pair<int, wire::LinkStatus>> neighbors,
                         std::vector<int> mprs = {}) {
  wire::HelloMessage m;
  m.origin = id(origin);
  for (auto [n, s] : neighbors) m.neighbors.push_back({id(n), s});
  for (int x : mprs) m.mpr_selection.push_back(id(x));
  return m;
}

wire::TcMessage tc(int origin, std::uint32_t ansn, std::vector<int> advertised) {
  wire::TcMessage m;
  m.origin = id(origin);
  m.ansn = ansn;
  for (int a : advertised) m.advertised.push_back(id(a));
  return m;
}

std::set<NodeId> ids(std::initializer_list<int> xs) {
  std::set<NodeId> s;
  for (int x : xs) s.insert(id(x));
  return s;
}

constexpr auto sym = wire::LinkStatus::symmetric;
constexpr auto heard = wire::LinkStatus::heard;

/// Node `self` with symmetric links to `neighbors`, each reporting its own
/// symmetric neighbors as given.
NodeState with_neighborhood(int self, const std::map<int, std::vector<int>>& neighbors) {
  NodeState s(id(self));
  for (const auto& [n, theirs] : neighbors) {
    std::vector<std::pair<int, wire::LinkStatus>> list{{self, sym}};
    for (int x : theirs) list.emplace_back(x, sym);
    process_hello(s, hello(n, list), SimTime{});
  }
  return s;
}

}  // namespace

TEST(Hello, FirstHelloWithoutUsIsHeardOnly) {
  NodeState a(id(0));
  EXPECT_TRUE(process_hello(a, hello(1, {}), SimTime{}));
  ASSERT_TRUE(a.neighbors.contains(id(1)));
  EXPECT_EQ(a.neighbors.at(id(1)).status, heard);
  EXPECT_FALSE(a.is_symmetric(id(1)));
}

TEST(Hello, ListingUsCompletesHandshake) {
  NodeState a(id(0));
  process_hello(a, hello(1, {}), SimTime{});
  process_hello(a, hello(1, {{0, heard}}), SimTime::seconds(2));
  EXPECT_TRUE(a.is_symmetric(id(1)));
  EXPECT_EQ(a.neighbors.at(id(1)).expires, SimTime::seconds(2) + a.config.neighb_hold);
}

TEST(Hello, MprSelectionMakesUsAnMpr) {
  NodeState a(id(0));
  process_hello(a, hello(1, {{0, sym}}, {0}), SimTime{});
  EXPECT_TRUE(a.selectors.contains(id(1)));
  a.next_tc = SimTime{};
  a.next_hello = SimTime::seconds(100);
  const auto out = periodic_emission(a, SimTime{});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<wire::TcMessage>(out[0]));
}

TEST(Hello, TwoHopSetExcludesSelf) {
  NodeState a = with_neighborhood(0, {{1, {2, 3}}});
  EXPECT_EQ(a.two_hop.at(id(1)), ids({2, 3}));
}

TEST(Hello, NeighborListNamingOriginIsDiscarded) {
  NodeState a(id(0));
  EXPECT_FALSE(process_hello(a, hello(1, {{1, sym}}), SimTime{}));
  EXPECT_EQ(a.counters.malformed_hello, 1u);
  EXPECT_TRUE(a.neighbors.empty());
}

TEST(Hello, MprRecomputedOnNeighborhoodChangeOnly) {
  NodeState a = with_neighborhood(0, {{1, {5}}});
  const auto before = a.counters.mpr_recomputations;
  process_hello(a, hello(1, {{0, sym}, {5, sym}}), SimTime::seconds(2));
  EXPECT_EQ(a.counters.mpr_recomputations, before);
  process_hello(a, hello(1, {{0, sym}, {5, sym}, {6, sym}}), SimTime::seconds(4));
  EXPECT_EQ(a.counters.mpr_recomputations, before + 1);
}

TEST(SelectMprs, EachSoleReacherIsChosen) {
  // X=1 reaches P=10, Y=2 reaches Q=11.
  const auto m = select_mprs(ids({1, 2}), {{id(1), ids({10})}, {id(2), ids({11})}});
  EXPECT_EQ(m.members, ids({1, 2}));
}

TEST(SelectMprs, EmptyTwoHopGivesEmptySet) {
  EXPECT_TRUE(select_mprs(ids({1, 2}), {}).members.empty());
}

TEST(SelectMprs, RedundantNeighborIsLeftOut) {
  // B=1 reaches {D=3, E=4}, C=2 reaches {D}.
  const auto m = select_mprs(ids({1, 2}), {{id(1), ids({3, 4})}, {id(2), ids({3})}});
  EXPECT_EQ(m.members, ids({1}));
  // Exhaustive minimal cover of the same neighborhood has the same size.
  const oracle::Adj adj = {{1, 2}, {0, 3, 4}, {0, 3}, {1, 2}, {1}};
  EXPECT_EQ(oracle::brute_force_min_cover(adj, 0).size(), m.members.size());
}

TEST(SelectMprs, TiesGoToLowestId) {
  const auto m = select_mprs(ids({3, 1, 2}), {{id(1), ids({10})}, {id(2), ids({10})}, {id(3), ids({10})}});
  EXPECT_EQ(m.members, ids({1}));
}

TEST(SelectMprs, SeqNumAdvancesOnlyOnChange) {
  const std::map<NodeId, std::set<NodeId>> reach = {{id(1), ids({10})}};
  const auto a = select_mprs(ids({1}), reach);
  const auto b = select_mprs(ids({1}), reach, a);
  EXPECT_EQ(b.seq_num, a.seq_num);
  const auto c = select_mprs(ids({1, 2}), {{id(1), ids({10})}, {id(2), ids({11})}}, b);
  EXPECT_EQ(c.seq_num, b.seq_num + 1);
}

TEST(ShouldForward, TtlOneIsProcessedNotForwarded) {
  NodeState a(id(0));
  process_hello(a, hello(1, {{0, sym}}, {0}), SimTime{});
  wire::Packet p;
  p.kind = wire::PacketKind::tc;
  p.origin = id(7);
  p.seq = 3;
  p.ttl = 1;
  EXPECT_TRUE(first_reception(a, p.origin, p.seq, SimTime{}));
  EXPECT_FALSE(should_forward(a, p, id(1), SimTime{}));
}

TEST(ShouldForward, DuplicateIsNotForwardedTwice) {
  NodeState a(id(0));
  process_hello(a, hello(1, {{0, sym}}, {0}), SimTime{});
  wire::Packet p;
  p.origin = id(7);
  p.seq = 3;
  p.ttl = 5;
  EXPECT_TRUE(should_forward(a, p, id(1), SimTime{}));
  EXPECT_EQ(p.ttl, 4);
  EXPECT_FALSE(first_reception(a, p.origin, p.seq, SimTime{}));
  p.ttl = 5;
  EXPECT_FALSE(should_forward(a, p, id(1), SimTime{}));
}

TEST(ShouldForward, OnlyForSelectors) {
  NodeState a(id(0));
  process_hello(a, hello(1, {{0, sym}}), SimTime{});
  process_hello(a, hello(2, {{0, sym}}, {0}), SimTime{});
  wire::Packet p;
  p.origin = id(7);
  p.ttl = 5;
  EXPECT_FALSE(should_forward(a, p, id(1), SimTime{}));
  // A later copy from a selector may still be forwarded.
  EXPECT_TRUE(should_forward(a, p, id(2), SimTime{}));
}

TEST(ProcessTc, FirstTcInsertsTuple) {
  NodeState a(id(0));
  EXPECT_TRUE(process_tc(a, tc(5, 1, {9}), SimTime{}));
  ASSERT_TRUE(a.topology.contains({id(5), id(9)}));
  EXPECT_EQ(a.topology.at({id(5), id(9)}).expires, a.config.top_hold);
}

TEST(ProcessTc, StaleAnsnIsIgnored) {
  NodeState a(id(0));
  process_tc(a, tc(5, 4, {9}), SimTime{});
  EXPECT_FALSE(process_tc(a, tc(5, 3, {8}), SimTime{}));
  EXPECT_EQ(a.counters.stale_tc, 1u);
  EXPECT_FALSE(a.topology.contains({id(5), id(8)}));
}

TEST(ProcessTc, MatchesNaiveRebuild) {
  // Oracle: keep only the newest advertisement per origin (equal ANSN adds),
  // then rebuild the whole tuple set from scratch.
  std::mt19937_64 gen(31);
  NodeState a(id(0));
  std::map<int, std::pair<std::uint32_t, std::set<int>>> latest;
  for (int step = 0; step < 2000; ++step) {
    const int origin = 1 + static_cast<int>(gen() % 5);
    const std::uint32_t ansn = static_cast<std::uint32_t>(gen() % 8);
    std::vector<int> adv;
    for (int d = 1; d <= 8; ++d)
      if (d != origin && gen() % 3 == 0) adv.push_back(d);
    process_tc(a, tc(origin, ansn, adv), SimTime{});

    auto it = latest.find(origin);
    if (it == latest.end() || ansn > it->second.first) latest[origin] = {ansn, std::set<int>(adv.begin(), adv.end())};
    else if (ansn == it->second.first) it->second.second.insert(adv.begin(), adv.end());

    std::set<std::pair<NodeId, NodeId>> expect, got;
    for (const auto& [o, v] : latest)
      for (int d : v.second) expect.insert({id(o), id(d)});
    for (const auto& [k, t] : a.topology) got.insert(k);
    ASSERT_EQ(got, expect) << "step " << step;
  }
}

TEST(ProcessTc, NewerEmptyAdvertisementPurges) {
  NodeState a(id(0));
  process_tc(a, tc(5, 1, {8, 9}), SimTime{});
  process_tc(a, tc(5, 2, {}), SimTime{});
  EXPECT_TRUE(a.topology.empty());
}

TEST(Routes, ChainUsesBfsDistance) {
  NodeState a = with_neighborhood(1, {{2, {3}}});
  process_tc(a, tc(3, 1, {4}), SimTime{});
  ASSERT_TRUE(a.routes.contains(id(4)));
  EXPECT_EQ(a.routes.at(id(4)).next_hop, id(2));
  EXPECT_EQ(a.routes.at(id(4)).hop_count, 3u);
  EXPECT_EQ(a.routes.at(id(4)).path, (std::vector<NodeId>{id(2), id(3), id(4)}));
  EXPECT_EQ(a.routes.at(id(2)).hop_count, 1u);
  EXPECT_EQ(a.routes.at(id(2)).next_hop, id(2));
}

TEST(Routes, BlacklistedRelayRemovesOnlyPath) {
  NodeState a = with_neighborhood(1, {{2, {3}}});
  ASSERT_TRUE(a.routes.contains(id(3)));
  EXPECT_TRUE(blacklist_node(a, id(2), BlacklistReason::auth_failure, SimTime{}));
  EXPECT_FALSE(a.routes.contains(id(3)));
  EXPECT_FALSE(a.routes.contains(id(2)));
  EXPECT_FALSE(blacklist_node(a, id(2), BlacklistReason::auth_failure, SimTime{}));
  EXPECT_FALSE(blacklist_node(a, id(1), BlacklistReason::auth_failure, SimTime{}));
}

TEST(Routes, TiesPickLowestNextHop) {
  // 0 reaches 9 through 3 or 2; both two hops.
  NodeState a = with_neighborhood(0, {{3, {9}}, {2, {9}}});
  EXPECT_EQ(a.routes.at(id(9)).next_hop, id(2));
}

TEST(Routes, FlatComputationMatchesGraphSearch) {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(gen() % 25);
    const auto adj = oracle::random_gnp(n, 0.2, gen);
    std::set<int> removed;
    if (t % 2) removed.insert(static_cast<int>(gen() % static_cast<std::uint64_t>(n)));
    for (const auto& st : oracle::converge_full(adj, removed)) {
      RoutingTable expect;
      for (auto& [dest, path] : shortest_paths(known_graph(st), st.self)) {
        RouteEntry e;
        e.next_hop = path.front();
        e.hop_count = static_cast<unsigned>(path.size());
        e.path = path;
        expect.emplace(dest, e);
      }
      ASSERT_EQ(compute_routes(st), expect);
    }
  }
}

TEST(Routes, NeverThroughBlacklistedNode) {
  std::mt19937_64 gen(13);
  for (int t = 0; t < 50; ++t) {
    const int n = 4 + static_cast<int>(gen() % 15);
    const auto adj = oracle::random_gnp(n, 0.3, gen);
    const int bad = static_cast<int>(gen() % static_cast<std::uint64_t>(n));
    for (auto st : oracle::converge_full(adj)) {
      if (st.self == id(bad)) continue;
      blacklist_node(st, id(bad), BlacklistReason::auth_failure, SimTime::seconds(7));
      for (const auto& [dest, r] : st.routes) {
        ASSERT_NE(dest, id(bad));
        ASSERT_EQ(std::count(r.path.begin(), r.path.end(), id(bad)), 0);
      }
    }
  }
}

TEST(Emission, NoSelectorsMeansHelloOnly) {
  NodeState a(id(0));
  a.next_hello = SimTime{};
  a.next_tc = SimTime{};
  const auto out = periodic_emission(a, SimTime{});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<wire::HelloMessage>(out[0]));
}

TEST(Emission, HelloEveryInterval) {
  NodeState a(id(0));
  a.next_hello = SimTime{};
  a.next_tc = SimTime::max();
  int hellos = 0;
  for (std::uint64_t ms = 0; ms <= 5000; ms += 100)
    for (const auto& m : periodic_emission(a, SimTime::millis(ms)))
      hellos += std::holds_alternative<wire::HelloMessage>(m) ? 1 : 0;
  EXPECT_EQ(hellos, 3);  // 0, 2, 4 s
}

TEST(Emission, AnsnAdvancesWhenAdvertisedSetChanges) {
  NodeState a(id(0));
  process_hello(a, hello(1, {{0, sym}}, {0}), SimTime{});
  std::vector<std::uint32_t> ansns;
  ansns.push_back(make_tc(a).ansn);
  ansns.push_back(make_tc(a).ansn);
  process_hello(a, hello(2, {{0, sym}}, {0}), SimTime{});
  ansns.push_back(make_tc(a).ansn);
  process_hello(a, hello(1, {{0, sym}}), SimTime{});
  ansns.push_back(make_tc(a).ansn);
  EXPECT_EQ(ansns, (std::vector<std::uint32_t>{1, 1, 2, 3}));
}

TEST(Expire, SilentNeighborIsDropped) {
  NodeState a = with_neighborhood(0, {{1, {2}}});
  EXPECT_FALSE(expire(a, a.config.neighb_hold));
  EXPECT_TRUE(expire(a, a.config.neighb_hold + SimTime{1}));
  EXPECT_TRUE(a.neighbors.empty());
  EXPECT_TRUE(a.routes.empty());
}
