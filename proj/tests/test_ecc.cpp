#include <gtest/gtest.h>

#include <cmath>

#include "qla/ecc.hpp"

using namespace qla;

TEST(Ecc, RecursiveFailureMatchesClosedForm) {
  const RecursionModel m{2.8e-7, 7.5e-5, 12.0, 2};
  const double want = 7.5e-5 / 144.0 * std::pow(2.8e-7 / 7.5e-5, 4);
  EXPECT_NEAR(recursive_failure(m) / want, 1.0, 1e-12);
  EXPECT_NEAR(feasible_computation_size(m) * want, 1.0, 1e-12);
  RecursionModel l0 = m;
  l0.L = 0;
  EXPECT_NEAR(recursive_failure(l0), 2.8e-7, 1e-20);
}

TEST(Ecc, LogLogSlopeIsTwoToTheLevel) {
  for (int L = 0; L <= 4; ++L) {
    RecursionModel a{1e-7, 7.5e-5, 12.0, L}, b = a;
    b.p0 = 2e-7;
    const double slope = std::log(recursive_failure(b) / recursive_failure(a)) / std::log(2.0);
    EXPECT_NEAR(slope, std::ldexp(1.0, L), 1e-9) << "L=" << L;
  }
}

TEST(Ecc, RecursionRejectsOutOfRange) {
  EXPECT_THROW(recursive_failure({0.0, 7.5e-5, 12, 2}), ValidationError);
  EXPECT_THROW(recursive_failure({1e-7, 1.5, 12, 2}), ValidationError);
  EXPECT_THROW(recursive_failure({1e-7, 7.5e-5, 0.5, 2}), ValidationError);
  EXPECT_THROW(recursive_failure({1e-7, 7.5e-5, 12, -1}), ValidationError);
}

TEST(Ecc, SlotAndLevelOneBreakdown) {
  const TechnologyParams t;
  const auto tile = steane_tile(2);
  const double slot = 10 + 0.01 * 12 + 2 * 10 + 1 + 10;
  EXPECT_NEAR(slot_time_us(t, tile, {}), slot, 1e-9);
  const auto b = syndrome_time(1, t, tile);
  EXPECT_NEAR(b.prep_s, (1 + 1 + 29 * slot + 100) * 1e-6, 1e-12);
  EXPECT_NEAR(b.interact_s, 7 * slot * 1e-6, 1e-12);
  EXPECT_NEAR(b.measure_s, 100e-6, 1e-12);
}

TEST(Ecc, LatencyRecursion) {
  EccTiming e{2, {0.0, 1e-3, 2e-2}, 1e-6, {0.0, 0.1, 0.2}};
  const double l1 = 0.9 * 2e-3 + 0.1 * 2 * (2e-3 + 1e-6);
  EXPECT_NEAR(ecc_latency_s(1, e), l1, 1e-15);
  const double l2 = 0.8 * 4e-2 + 0.2 * 2 * (4e-2 + 1e-6 + l1);
  EXPECT_NEAR(ecc_latency_s(2, e), l2, 1e-15);
  EXPECT_EQ(ecc_latency_s(0, e), 0.0);
  EXPECT_THROW(ecc_latency_s(3, e), ValidationError);
}

TEST(Ecc, LatencyGrowsWithNontrivialRate) {
  const TechnologyParams t;
  const auto tile = steane_tile(2);
  double prev = 0;
  for (double q : {0.0, 1e-3, 1e-2, 0.1}) {
    const double v = ecc_latency_s(2, calibrated_timing(t, tile, {}, q, q));
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Ecc, RejectsNonSteaneTile) {
  EXPECT_THROW(syndrome_time(1, TechnologyParams{}, bitflip_tile()), ValidationError);
  EXPECT_THROW(syndrome_time(3, TechnologyParams{}, steane_tile(2)), ValidationError);
}
