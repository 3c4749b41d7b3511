// Copyright 2026 The RBPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "rbpi/routing.hpp"
#include "test_support.hpp"

using rbpi::Address;
using rbpi::CapacityReport;
using rbpi::Kilograms;
using rbpi::LinkCapacity;
using rbpi::NodeId;
using rbpi::RouteEntry;
using rbpi::RouteSource;
using rbpi::RoutingTable;
using rbpi::SimTime;
using rbpi::Strategy;
using rbpi::make_address;
using rbpi::testing::make_node;

namespace {

RouteEntry learned(Address dest, NodeId via, std::uint8_t hops, std::vector<NodeId> path, Kilograms free) {
  RouteEntry e;
  e.destination = dest;
  e.next_hop = via;
  e.hop_count = hops;
  e.path = std::move(path);
  e.free_capacity = free;
  e.source = RouteSource::kLearned;
  return e;
}

rbpi::codec::PiDatagramHeader datagram_to(Address dest, std::uint16_t payload) {
  rbpi::codec::PiDatagramHeader h;
  h.destination = dest;
  h.payload_length = payload;
  return h;
}

}  // namespace

TEST(Strategy, NamesRoundTrip) {
  for (Strategy s : {Strategy::kRip, Strategy::kOspf, Strategy::kBgp}) {
    EXPECT_EQ(rbpi::strategy_from_name(rbpi::strategy_name(s)), s);
  }
  EXPECT_FALSE(rbpi::strategy_from_name("eigrp"));
  EXPECT_FALSE(rbpi::capacity_aware(Strategy::kRip));
  EXPECT_TRUE(rbpi::capacity_aware(Strategy::kBgp));
}

TEST(RipStep, NeighborAdvertisesItselfAtOneHop) {
  RoutingTable a(1, make_address(1, 1));
  RoutingTable b(2, make_address(1, 2));
  const RoutingTable next = rbpi::rip_step(a, std::vector<RoutingTable>{b});
  ASSERT_NE(next.best(make_address(1, 2)), nullptr);
  EXPECT_EQ(next.best(make_address(1, 2))->hop_count, 1);
  EXPECT_EQ(next.best(make_address(1, 2))->next_hop, 2u);
  EXPECT_EQ(next.best(make_address(1, 1)), nullptr);
}

TEST(RipStep, PegsAtUnreachable) {
  RoutingTable nb(2, make_address(1, 2));
  RouteEntry far;
  far.destination = make_address(1, 9);
  far.next_hop = 3;
  far.hop_count = 15;
  nb.set_candidates(far.destination, {far});
  RoutingTable me(1, make_address(1, 1));
  const RoutingTable next = rbpi::rip_step(me, std::vector<RoutingTable>{nb});
  EXPECT_EQ(next.best(far.destination)->hop_count, rbpi::kUnreachableHops);
  EXPECT_FALSE(next.best(far.destination)->reachable());
}

TEST(RipConvergence, TriangleUsesDirectRoads) {
  std::vector<rbpi::RoadEdge> edges;
  rbpi::testing::add_road(edges, 1, 2);
  rbpi::testing::add_road(edges, 2, 3);
  rbpi::testing::add_road(edges, 1, 3, 500);
  const rbpi::RoadGraph g({make_node(1), make_node(2), make_node(3)}, edges);
  const auto tables = rbpi::testing::converge_rip(g);
  const RouteEntry* e = tables.at(1).best(make_address(1, 3));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->hop_count, 1);
  EXPECT_EQ(e->next_hop, 3u);
}

TEST(RipConvergence, MatchesBreadthFirstSearchOnRandomGraphs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = rbpi::testing::random_connected_graph(rng, 2 + static_cast<int>(rng() % 11));
    const auto tables = rbpi::testing::converge_rip(g);
    for (const auto& src : g.nodes()) {
      const auto dist = rbpi::testing::bfs_hops(g, src.id);
      for (const auto& dst : g.nodes()) {
        if (dst.id == src.id) continue;
        const RouteEntry* e = tables.at(src.id).best(dst.address);
        ASSERT_NE(e, nullptr);
        ASSERT_EQ(e->hop_count, dist.at(dst.id)) << "trial " << trial << " " << src.id << "->" << dst.id;
      }
    }
  }
}

TEST(RipConvergence, LongChainHitsTheHopCap) {
  const auto g = rbpi::testing::chain_graph(18);
  const auto tables = rbpi::testing::converge_rip(g);
  const RoutingTable& t = tables.at(0);
  EXPECT_EQ(t.best(make_address(1, 15))->hop_count, 15);
  EXPECT_TRUE(t.best(make_address(1, 15))->reachable());
  EXPECT_FALSE(t.best(make_address(1, 16))->reachable());
  EXPECT_FALSE(t.best(make_address(1, 17))->reachable());
}

TEST(OspfRecompute, SingleNodeDomainHasEmptyTable) {
  rbpi::RoadGraph g({make_node(1)}, {});
  const auto tables = rbpi::ospf_recompute(*g.find_domain(1), g);
  ASSERT_EQ(tables.size(), 1u);
  EXPECT_TRUE(tables.at(1).entries().empty());
}

TEST(OspfRecompute, TiesGoToLowerNextHop) {
  std::vector<rbpi::RoadEdge> edges;
  rbpi::testing::add_road(edges, 1, 3);
  rbpi::testing::add_road(edges, 1, 2);
  rbpi::testing::add_road(edges, 3, 4);
  rbpi::testing::add_road(edges, 2, 4);
  rbpi::RoadGraph g({make_node(1), make_node(2), make_node(3), make_node(4)}, edges);
  const auto tables = rbpi::ospf_recompute(*g.find_domain(1), g);
  const RouteEntry* e = tables.at(1).best(make_address(1, 4));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->next_hop, 2u);
  EXPECT_EQ(e->path, (std::vector<NodeId>{1, 2, 4}));
  EXPECT_EQ(e->source, RouteSource::kIntraDomain);
}

TEST(OspfRecompute, IgnoresEdgesLeavingTheDomain) {
  std::vector<rbpi::RoadEdge> edges;
  rbpi::testing::add_road(edges, 1, 2, 10);
  rbpi::testing::add_road(edges, 2, 3, 10);
  rbpi::testing::add_road(edges, 1, 3, 500);
  rbpi::RoadGraph g({make_node(1, 1), make_node(2, 2), make_node(3, 1)}, edges);
  const auto tables = rbpi::ospf_recompute(*g.find_domain(1), g);
  EXPECT_EQ(tables.at(1).best(make_address(1, 3))->next_hop, 3u);
  EXPECT_EQ(tables.at(1).best(make_address(2, 2)), nullptr);
}

TEST(OspfRecompute, MatchesPathEnumerationOracle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = rbpi::testing::random_connected_graph(rng, 2 + static_cast<int>(rng() % 7), 0.4);
    const auto tables = rbpi::ospf_recompute(*g.find_domain(1), g);
    auto weight = [&](NodeId a, NodeId b) {
      return SimTime::from_hours(rbpi::travel_time(*g.find_edge(a, b))).ticks();
    };
    for (const auto& src : g.nodes()) {
      // Best (ticks, first hop) per destination over every simple path.
      std::map<NodeId, std::pair<std::int64_t, NodeId>> best;
      std::vector<NodeId> stack{src.id};
      std::function<void(std::int64_t)> walk = [&](std::int64_t ticks) {
        const NodeId at = stack.back();
        if (stack.size() > 1) {
          const std::pair<std::int64_t, NodeId> label{ticks, stack[1]};
          auto it = best.find(at);
          if (it == best.end() || label < it->second) best[at] = label;
        }
        for (const auto& nb : rbpi::neighbors(g, at)) {
          if (std::find(stack.begin(), stack.end(), nb.node) != stack.end()) continue;
          stack.push_back(nb.node);
          walk(ticks + weight(at, nb.node));
          stack.pop_back();
        }
      };
      walk(0);
      for (const auto& [dst, label] : best) {
        const RouteEntry* e = tables.at(src.id).best(g.node(dst).address);
        ASSERT_NE(e, nullptr);
        EXPECT_EQ(e->next_hop, label.second);
        std::int64_t total = 0;
        for (std::size_t i = 0; i + 1 < e->path.size(); ++i) total += weight(e->path[i], e->path[i + 1]);
        EXPECT_EQ(total, label.first);
      }
    }
  }
}

TEST(BgpExchange, LearnsOnlyForeignDestinations) {
  RoutingTable a(1, make_address(1, 1));
  RoutingTable b(2, make_address(2, 2));
  RouteEntry inner;
  inner.destination = make_address(2, 3);
  inner.next_hop = 3;
  inner.hop_count = 1;
  inner.path = {2, 3};
  inner.free_capacity = 700;
  inner.source = RouteSource::kIntraDomain;
  b.set_candidates(inner.destination, {inner});
  RouteEntry back_home = learned(make_address(1, 5), 5, 1, {2, 5}, 100);
  b.set_candidates(back_home.destination, {back_home});

  const auto [na, nb] = rbpi::bgp_exchange(a, b, LinkCapacity{500, 400});
  const RouteEntry* to_b = na.best(make_address(2, 2));
  ASSERT_NE(to_b, nullptr);
  EXPECT_EQ(to_b->hop_count, 1);
  EXPECT_EQ(to_b->free_capacity, 500);
  const RouteEntry* to_3 = na.best(make_address(2, 3));
  ASSERT_NE(to_3, nullptr);
  EXPECT_EQ(to_3->hop_count, 2);
  EXPECT_EQ(to_3->path, (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(to_3->free_capacity, 500);
  EXPECT_EQ(to_3->downstream_capacity, 700);
  EXPECT_EQ(na.best(make_address(1, 5)), nullptr);
  ASSERT_NE(nb.best(make_address(1, 1)), nullptr);
  EXPECT_EQ(nb.best(make_address(1, 1))->free_capacity, 400);
}

TEST(BgpExchange, DropsPathsThroughTheLearner) {
  RoutingTable a(1, make_address(1, 1));
  RoutingTable b(2, make_address(2, 2));
  b.set_candidates(make_address(3, 9), {learned(make_address(3, 9), 1, 2, {2, 1, 9}, 50)});
  const auto [na, nb] = rbpi::bgp_exchange(a, b, LinkCapacity{100, std::nullopt});
  EXPECT_EQ(na.best(make_address(3, 9)), nullptr);
  EXPECT_EQ(nb, b);
}

TEST(BgpExchange, CapsLearnedRoutesPerNeighbor) {
  RoutingTable a(1, make_address(1, 1));
  RoutingTable b(2, make_address(2, 2));
  const Address dest = make_address(3, 1);
  std::vector<RouteEntry> many;
  for (NodeId via = 10; via < 16; ++via) many.push_back(learned(dest, via, 2, {2, via, 99}, 100));
  b.set_candidates(dest, many);
  const auto [na, nb] = rbpi::bgp_exchange(a, b, LinkCapacity{100, 100});
  EXPECT_EQ(na.candidates_for(dest).size(), rbpi::kMaxLearnedPerNeighbor);
  EXPECT_EQ(na.candidates_for(dest).front().path, (std::vector<NodeId>{1, 2, 10, 99}));
}

TEST(BgpExchange, ReplacesPreviouslyLearnedRoutes) {
  RoutingTable a(1, make_address(1, 1));
  RoutingTable b(2, make_address(2, 2));
  const Address dest = make_address(3, 1);
  b.set_candidates(dest, {learned(dest, 7, 1, {2, 7}, 100)});
  auto [na, nb] = rbpi::bgp_exchange(a, b, LinkCapacity{100, 100});
  ASSERT_EQ(na.candidates_for(dest).size(), 1u);
  b.set_candidates(dest, {});
  auto [na2, nb2] = rbpi::bgp_exchange(na, b, LinkCapacity{100, 100});
  EXPECT_TRUE(na2.candidates_for(dest).empty());
}

TEST(BgpExchange, RejectsNonAdjacentPair) {
  RoutingTable a(1, make_address(1, 1));
  RoutingTable b(2, make_address(2, 2));
  EXPECT_THROW(rbpi::bgp_exchange(a, b, LinkCapacity{}), rbpi::RoutingError);
}

TEST(EdgeBandwidth, SumsFreeCapacityInsideInclusiveWindow) {
  std::vector<rbpi::ScheduledDeparture> s{
      {1, 1, 2, SimTime::from_hours(0), 1000, 200},  {2, 1, 2, SimTime::from_hours(24), 500, 0},
      {3, 1, 2, SimTime::from_hours(25), 900, 0},    {4, 2, 1, SimTime::from_hours(1), 900, 0},
      {5, 1, 2, SimTime::from_hours(3), 400, 600},
  };
  EXPECT_EQ(rbpi::edge_bandwidth(s, 1, 2, SimTime(), SimTime::from_hours(24)), 1300);
  EXPECT_EQ(rbpi::edge_bandwidth(s, 1, 3, SimTime(), SimTime::from_hours(24)), 0);
  EXPECT_THROW(rbpi::edge_bandwidth(s, 1, 2, SimTime::from_hours(2), SimTime::from_hours(1)),
               std::invalid_argument);
}

TEST(ApplyCapacityReport, UpdatesEntriesThroughReportedEdge) {
  RoutingTable t(1, make_address(1, 1));
  RouteEntry e = learned(make_address(2, 9), 2, 2, {1, 2, 9}, 50);
  e.downstream_capacity = 300;
  RouteEntry other = learned(make_address(2, 9), 3, 3, {1, 3, 4, 9}, 50);
  t.set_candidates(e.destination, {e, other});

  CapacityReport r{7, std::make_pair(NodeId{1}, NodeId{2}), SimTime::from_hours(5), 800};
  const RoutingTable u = rbpi::apply_capacity_report(t, r);
  const auto cands = u.candidates_for(e.destination);
  EXPECT_EQ(cands[0].free_capacity, 300);
  EXPECT_EQ(cands[0].updated_at, SimTime::from_hours(5));
  EXPECT_EQ(cands[1].free_capacity, 50);

  CapacityReport stale{7, std::make_pair(NodeId{1}, NodeId{2}), SimTime::from_hours(4), 10};
  EXPECT_EQ(rbpi::apply_capacity_report(u, stale), u);

  CapacityReport elsewhere{7, std::make_pair(NodeId{5}, NodeId{2}), SimTime::from_hours(9), 10};
  EXPECT_EQ(rbpi::apply_capacity_report(u, elsewhere), u);

  CapacityReport no_edge{7, std::nullopt, SimTime::from_hours(9), 10};
  EXPECT_EQ(rbpi::apply_capacity_report(u, no_edge), u);
}

TEST(SelectNextHop, CapacityAwarePrefersFeasibleRoute) {
  RoutingTable t(1, make_address(1, 1));
  const Address dest = make_address(2, 4);
  t.set_candidates(dest, {learned(dest, 4, 1, {1, 4}, 0), learned(dest, 2, 3, {1, 2, 3, 4}, 1000)});
  const auto bgp = rbpi::select_next_hop(t, datagram_to(dest, 500), Strategy::kBgp);
  ASSERT_TRUE(bgp);
  EXPECT_EQ(bgp->next_hop, 2u);
  EXPECT_FALSE(bgp->capacity_shortfall);
  const auto rip = rbpi::select_next_hop(t, datagram_to(dest, 500), Strategy::kRip);
  EXPECT_EQ(rip->next_hop, 4u);
  const auto heavy = rbpi::select_next_hop(t, datagram_to(dest, 5000), Strategy::kBgp);
  EXPECT_EQ(heavy->next_hop, 4u);
  EXPECT_TRUE(heavy->capacity_shortfall);
}

TEST(SelectNextHop, UnknownDestinationHasNoRoute) {
  RoutingTable t(1, make_address(1, 1));
  EXPECT_FALSE(rbpi::select_next_hop(t, datagram_to(make_address(9, 9), 1), Strategy::kBgp));
}

TEST(SelectNextHop, PinnedPathWinsForConnectionOriented) {
  RoutingTable t(2, make_address(1, 2));
  const Address dest = make_address(2, 4);
  t.set_candidates(dest, {learned(dest, 4, 1, {2, 4}, 1000)});
  auto h = datagram_to(dest, 10);
  h.next_header = rbpi::codec::kConnectionOriented;
  const std::vector<NodeId> pinned{1, 2, 3, 4};
  EXPECT_EQ(rbpi::select_next_hop(t, h, Strategy::kBgp, pinned)->next_hop, 3u);
  h.next_header = rbpi::codec::kConnectionless;
  EXPECT_EQ(rbpi::select_next_hop(t, h, Strategy::kBgp, pinned)->next_hop, 4u);
}

TEST(RipConvergence, LineAfterTwoSweeps) {
  const auto g = rbpi::testing::chain_graph(3);
  const auto tables = rbpi::testing::converge_rip(g, 2);
  const RouteEntry* e = tables.at(0).best(make_address(1, 2));
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->hop_count, 2);
  EXPECT_EQ(e->next_hop, 1u);
}

TEST(RipConvergence, ConvergedTablesAreAFixedPoint) {
  std::mt19937_64 rng(3);
  const auto g = rbpi::testing::random_connected_graph(rng, 9);
  const auto tables = rbpi::testing::converge_rip(g);
  for (const auto& [id, t] : tables) {
    std::vector<RoutingTable> nbs;
    for (const auto& nb : rbpi::neighbors(g, id)) nbs.push_back(tables.at(nb.node));
    EXPECT_EQ(rbpi::rip_step(t, nbs), t);
  }
}

TEST(BgpExchange, LearnedCapacityIsCappedByEdgeBandwidth) {
  RoutingTable a(1, make_address(1, 1));
  RoutingTable b(2, make_address(2, 2));
  const Address dest = make_address(2, 3);
  b.set_candidates(dest, {learned(dest, 3, 1, {2, 3}, 500)});
  const auto [na, nb] = rbpi::bgp_exchange(a, b, LinkCapacity{200, 200});
  EXPECT_EQ(na.best(dest)->free_capacity, 200);
}

TEST(BgpExchange, RandomRingsNeverLearnCycles) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    std::vector<RoutingTable> t;
    for (int i = 0; i < n; ++i) t.emplace_back(i, make_address(static_cast<rbpi::DomainId>(i + 1), 1));
    std::vector<Kilograms> bw(n);
    for (auto& w : bw) w = static_cast<Kilograms>(rng() % 1000);
    for (int round = 0; round < n; ++round) {
      for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        auto [x, y] = rbpi::bgp_exchange(t[i], t[j], LinkCapacity{bw[i], bw[i]});
        t[i] = std::move(x);
        t[j] = std::move(y);
      }
    }
    for (int i = 0; i < n; ++i) {
      for (const auto& [dest, list] : t[i].candidates()) {
        for (const RouteEntry& e : list) {
          std::set<NodeId> unique(e.path.begin(), e.path.end());
          EXPECT_EQ(unique.size(), e.path.size());
          EXPECT_EQ(e.path.front(), static_cast<NodeId>(i));
          const int via = static_cast<int>(e.next_hop);
          const Kilograms link = via == (i + 1) % n ? bw[i] : bw[via];
          EXPECT_LE(e.free_capacity, link);
        }
      }
    }
  }
}

TEST(EdgeBandwidth, MatchesFilterAndSumOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<rbpi::ScheduledDeparture> s(rng() % 20);
    for (auto& d : s) {
      d.mover = static_cast<rbpi::MoverId>(rng() % 5);
      d.from = static_cast<NodeId>(rng() % 3);
      d.to = static_cast<NodeId>(rng() % 3);
      d.time = SimTime::from_ticks(static_cast<std::int64_t>(rng() % 50000));
      d.capacity = static_cast<Kilograms>(rng() % 2000);
      d.load = static_cast<Kilograms>(rng() % 2000);
    }
    const auto start = SimTime::from_ticks(static_cast<std::int64_t>(rng() % 25000));
    const auto end = start + SimTime::from_ticks(static_cast<std::int64_t>(rng() % 25000));
    Kilograms expect = 0;
    for (const auto& d : s) {
      if (d.from == 0 && d.to == 1 && !(d.time < start) && !(end < d.time) && d.capacity > d.load) {
        expect += d.capacity - d.load;
      }
    }
    EXPECT_EQ(rbpi::edge_bandwidth(s, 0, 1, start, end), expect);
  }
}

TEST(EdgeBandwidth, TwoMoversSum) {
  std::vector<rbpi::ScheduledDeparture> s{{1, 1, 2, SimTime::from_hours(1), 1000, 700},
                                          {2, 1, 2, SimTime::from_hours(2), 500, 350}};
  EXPECT_EQ(rbpi::edge_bandwidth(s, 1, 2, SimTime(), SimTime::from_hours(24)), 450);
  EXPECT_EQ(rbpi::edge_bandwidth(s, 1, 2, SimTime::from_hours(3), SimTime::from_hours(24)), 0);
}

TEST(ApplyCapacityReport, RaisedCapacityMakesRouteFeasible) {
  RoutingTable t(1, make_address(1, 1));
  const Address dest = make_address(2, 4);
  t.set_candidates(dest, {learned(dest, 2, 1, {1, 2}, 0), learned(dest, 3, 2, {1, 3, 4}, 0)});
  const auto before = rbpi::select_next_hop(t, datagram_to(dest, 300), Strategy::kBgp);
  EXPECT_TRUE(before->capacity_shortfall);
  const auto u = rbpi::apply_capacity_report(t, {9, std::make_pair(NodeId{1}, NodeId{3}), SimTime::from_hours(1), 400});
  const auto after = rbpi::select_next_hop(u, datagram_to(dest, 300), Strategy::kBgp);
  EXPECT_FALSE(after->capacity_shortfall);
  EXPECT_EQ(after->next_hop, 3u);
}

TEST(SelectNextHop, Deterministic) {
  RoutingTable t(1, make_address(1, 1));
  const Address dest = make_address(2, 4);
  t.set_candidates(dest, {learned(dest, 5, 2, {1, 5, 4}, 10), learned(dest, 3, 2, {1, 3, 4}, 10)});
  const auto x = rbpi::select_next_hop(t, datagram_to(dest, 5), Strategy::kOspf);
  const auto y = rbpi::select_next_hop(t, datagram_to(dest, 5), Strategy::kOspf);
  EXPECT_EQ(x->next_hop, 3u);
  EXPECT_EQ(x->next_hop, y->next_hop);
  EXPECT_EQ(x->path, y->path);
}
