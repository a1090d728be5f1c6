#include <gtest/gtest.h>

#include "qla/scheduler.hpp"

using namespace qla;

namespace {

TileLayout grid(int r, int c) { return build_layout(r, c, steane_tile(2), 100); }

EprRequest req(TileCoord s, TileCoord d, int pairs, std::int64_t release, std::int64_t window) {
  EprRequest r;
  r.src = s;
  r.dst = d;
  r.pairs_needed = pairs;
  r.release = release;
  r.deadline = release + window;
  return r;
}

}  // namespace

TEST(ChannelGraph, PortsAndEdges) {
  const auto l = grid(8, 8);
  const ChannelGraph g(l, 2);
  EXPECT_EQ(g.island_rows(), 8);
  EXPECT_EQ(g.island_cols(), 4);
  EXPECT_EQ(g.edges().size(), 2u * (8 * 3 + 7 * 4));
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& a = g.edges()[e];
    const auto& b = g.edges()[ChannelGraph::reverse(static_cast<int>(e))];
    EXPECT_EQ(a.from, b.to);
    EXPECT_EQ(a.to, b.from);
  }
  EXPECT_EQ(g.port({0, 0}).col, 0);
  EXPECT_EQ(g.port({0, 7}).col, 3);
  EXPECT_EQ(g.port({5, 3}).row, 5);
}

TEST(ChannelGraph, ShortestRoutesHaveManhattanLength) {
  const ChannelGraph g(grid(8, 8), 2);
  const auto routes = g.shortest_routes({1, 0}, {4, 3});
  ASSERT_FALSE(routes.empty());
  for (const auto& r : routes) EXPECT_EQ(r.size(), 6u);
  EXPECT_TRUE(g.shortest_routes({2, 2}, {2, 2}).front().empty());
}

TEST(Scheduler, UncontendedDeliveryTakesMinimumTime) {
  const ChannelGraph g(grid(8, 8), 2);
  const auto cfg = default_scheduler_config(g, TechnologyParams{});
  const auto r = schedule({req({0, 0}, {3, 7}, 49, 5, cfg.window_slots)}, g, cfg);
  ASSERT_EQ(r.deliveries.size(), 1u);
  const auto& d = r.deliveries[0];
  EXPECT_EQ(d.start, 5);
  EXPECT_EQ(d.lanes, 2);
  EXPECT_EQ(d.occupied, (49 + 49) / 50);
  EXPECT_EQ(d.finish, 5 + d.occupied + cfg.swap_slots);
  EXPECT_TRUE(d.met_deadline);
  EXPECT_EQ(d.retries, 0);
}

TEST(Scheduler, DefaultConfig) {
  const ChannelGraph g(grid(8, 8), 2);
  const auto cfg = default_scheduler_config(g, TechnologyParams{});
  EXPECT_GT(cfg.slot_us, 0.0);
  EXPECT_EQ(cfg.window_slots, static_cast<std::int64_t>(std::floor(
                                  ecc_latency_s(2, calibrated_timing(TechnologyParams{}, steane_tile(2))) * 1e6 / cfg.slot_us)));
  EXPECT_GE(cfg.window_slots, 1);
}

TEST(Scheduler, ContentionDelaysSecondRequest) {
  const ChannelGraph g(grid(1, 8), 1);
  SchedulerConfig cfg;
  cfg.window_slots = 100;
  std::vector<EprRequest> rs{req({0, 0}, {0, 7}, 50, 0, 100), req({0, 0}, {0, 7}, 50, 0, 100)};
  const auto r = schedule(rs, g, cfg);
  EXPECT_EQ(r.deliveries[0].start, 0);
  EXPECT_EQ(r.deliveries[1].start, r.deliveries[0].occupied);
  EXPECT_TRUE(replay_respects_capacity(r, g));
}

TEST(Scheduler, MissesAreScheduledLate) {
  const ChannelGraph g(grid(1, 8), 1);
  SchedulerConfig cfg;
  std::vector<EprRequest> rs{req({0, 0}, {0, 7}, 250, 0, 1), req({0, 0}, {0, 7}, 25, 0, 1)};
  const auto r = schedule(rs, g, cfg);
  EXPECT_FALSE(r.deliveries[0].met_deadline);
  EXPECT_FALSE(r.deliveries[1].met_deadline);
  EXPECT_GE(r.deliveries[1].start, r.deliveries[0].occupied);
  EXPECT_EQ(utilization_report(r).hit_rate, 0.0);
}

TEST(Scheduler, BackOffUsesAlternateEndpoints) {
  const ChannelGraph g(grid(2, 8), 1);
  SchedulerConfig cfg;
  auto a = req({0, 0}, {0, 7}, 100, 0, 6);
  auto b = req({0, 0}, {0, 7}, 100, 0, 6);
  b.alternates = {{{1, 0}, {1, 7}}};
  const auto r = schedule({a, b}, g, cfg);
  EXPECT_TRUE(r.deliveries[0].met_deadline);
  EXPECT_EQ(r.deliveries[0].retries, 0);
  EXPECT_TRUE(r.deliveries[1].met_deadline);
  EXPECT_EQ(r.deliveries[1].retries, 1);
  EXPECT_EQ(r.deliveries[1].src, (TileCoord{1, 0}));
}

TEST(Scheduler, RejectsBadRequests) {
  const ChannelGraph g(grid(2, 2), 2);
  SchedulerConfig cfg;
  EXPECT_THROW(schedule({req({0, 0}, {5, 5}, 1, 0, 1)}, g, cfg), ValidationError);
  EXPECT_THROW(schedule({req({0, 0}, {1, 1}, 0, 0, 1)}, g, cfg), ValidationError);
  auto r = req({0, 0}, {1, 1}, 1, 5, 1);
  r.deadline = 2;
  EXPECT_THROW(schedule({r}, g, cfg), ValidationError);
}

TEST(Scheduler, EmptyWorkload) {
  const ChannelGraph g(grid(8, 8), 2);
  const auto r = schedule({}, g, SchedulerConfig{});
  const auto u = utilization_report(r);
  EXPECT_EQ(u.utilization, 0.0);
  EXPECT_EQ(u.hit_rate, 1.0);
  EXPECT_EQ(u.makespan, 0);
}

TEST(Scheduler, SaturatingWorkloadFillsChannels) {
  const ChannelGraph g(grid(8, 8), 2);
  const auto cfg = default_scheduler_config(g, TechnologyParams{});
  const auto r = schedule(saturating_workload(g, 5000, cfg.window_slots), g, cfg);
  EXPECT_GT(utilization_report(r).utilization, 0.9);
  EXPECT_TRUE(replay_respects_capacity(r, g));
}

TEST(Scheduler, WorkloadParser) {
  const auto rs = parse_workload("# header\n0 0 1 1 49 3\n\n2 2 0 1 10 0 # tail\n", 13);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].dst, (TileCoord{1, 1}));
  EXPECT_EQ(rs[0].deadline, 16);
  EXPECT_EQ(rs[1].pairs_needed, 10);
  EXPECT_THROW(parse_workload("0 0 1 1 49\n", 13), ValidationError);
  EXPECT_THROW(parse_workload("0 0 1 1 x 2\n", 13), ValidationError);
  EXPECT_THROW(parse_workload("0 0 1 1 0 2\n", 13), ValidationError);
}

TEST(Drift, SettlesBesideSiteOrReturns) {
  const auto l = grid(3, 3);
  DriftState st;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) st.role[{r, c}] = TileRole::data;
  st.role[{1, 2}] = TileRole::factory;
  st.position[7] = {0, 0};
  st.occupied = {{0, 0}, {1, 1}};
  const auto d = apply_drift(st, l, 7, {1, 1});
  EXPECT_FALSE(d.returned);
  EXPECT_TRUE(d.to == (TileCoord{0, 1}) || d.to == (TileCoord{1, 0}));
  EXPECT_EQ(st.position[7], d.to);
  EXPECT_FALSE(st.occupied.count({0, 0}));
  EXPECT_TRUE(st.occupied.count(d.to));

  st.position[8] = {2, 2};
  st.occupied.insert({2, 2});
  const std::vector<EprRequest> later{req({2, 2}, {0, 0}, 1, 0, 1)};
  const auto e = apply_drift(st, l, 8, {1, 1}, later);
  EXPECT_TRUE(e.returned);
  EXPECT_EQ(st.position[8], (TileCoord{2, 2}));
}

TEST(Drift, ReturnsWhenNoFreeNeighbour) {
  const auto l = grid(1, 3);
  DriftState st;
  st.role = {{{0, 0}, TileRole::data}, {{0, 1}, TileRole::data}, {{0, 2}, TileRole::factory}};
  st.position[1] = {0, 0};
  st.occupied = {{0, 0}, {0, 1}};
  const auto d = apply_drift(st, l, 1, {0, 1});
  EXPECT_TRUE(d.returned);
  EXPECT_EQ(st.position[1], (TileCoord{0, 0}));
  EXPECT_TRUE(free_neighbours({0, 1}, st, l).empty());
}

TEST(Toffoli, DeterministicAndCapacitySafe) {
  const auto l = grid(8, 8);
  const ChannelGraph g(l, 2);
  const auto cfg = default_scheduler_config(g, TechnologyParams{});
  const auto w = make_toffoli_workload(l, 200, 1, cfg.window_slots, 5);
  const auto a = schedule_toffoli(w, g, cfg, {});
  const auto b = schedule_toffoli(make_toffoli_workload(l, 200, 1, cfg.window_slots, 5), g, cfg, {});
  ASSERT_EQ(a.deliveries.size(), b.deliveries.size());
  for (std::size_t i = 0; i < a.deliveries.size(); ++i) {
    EXPECT_EQ(a.deliveries[i].start, b.deliveries[i].start);
    EXPECT_EQ(a.deliveries[i].route, b.deliveries[i].route);
  }
  EXPECT_EQ(a.utilization, b.utilization);
  EXPECT_TRUE(replay_respects_capacity(a, g));
  for (const auto& gate : w.gates)
    for (int q : gate.operands) EXPECT_EQ(w.initial.role.at(w.initial.position.at(q)), TileRole::data);
}

TEST(Toffoli, MoreBandwidthNeverHurtsHitRate) {
  const auto l = grid(8, 8);
  for (std::uint64_t seed : {0, 1, 2}) {
    double prev = -1;
    for (int bw : {1, 2, 3, 4}) {
      const ChannelGraph g(l, bw);
      const auto cfg = default_scheduler_config(g, TechnologyParams{});
      const auto r = schedule_toffoli(make_toffoli_workload(l, 300, 1, cfg.window_slots, seed), g, cfg, {});
      const double hit = utilization_report(r).hit_rate;
      EXPECT_GE(hit + 1e-12, prev) << "seed " << seed << " bw " << bw;
      prev = hit;
    }
  }
}

TEST(Toffoli, DriftSavesTransportOverAlwaysReturning) {
  const auto l = grid(8, 8);
  const ChannelGraph g(l, 2);
  const auto cfg = default_scheduler_config(g, TechnologyParams{});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto w = make_toffoli_workload(l, 300, 1, cfg.window_slots, seed);
    ToffoliOptions back;
    back.drift = false;
    const auto drift = schedule_toffoli(w, g, cfg, {});
    const auto base = schedule_toffoli(w, g, cfg, back);
    EXPECT_LE(drift.epr_cells, base.epr_cells) << seed;
  }
}
