#include <gtest/gtest.h>

#include "qla/params.hpp"

using namespace qla;

TEST(Params, ExpectedProfileValues) {
  const auto p = expected_profile();
  EXPECT_EQ(p.name, ProfileName::expected);
  EXPECT_DOUBLE_EQ(p.params.double_gate_us, 10.0);
  EXPECT_DOUBLE_EQ(p.params.measure_us, 100.0);
  EXPECT_DOUBLE_EQ(p.params.p_double, 1e-7);
  EXPECT_DOUBLE_EQ(p.params.memory_lifetime_s, 10.0);
  EXPECT_NO_THROW(validate(p.params));
}

TEST(Params, CurrentProfileConvertsMovementToCells) {
  const auto p = current_profile();
  EXPECT_NEAR(p.params.p_move_per_cell, 0.005 * 20.0, 1e-15);
  EXPECT_DOUBLE_EQ(p.params.p_double, 0.03);
}

TEST(Params, RoundTripThroughText) {
  for (const auto& prof : {expected_profile(), current_profile()}) {
    const auto back = parse_profile(serialize_profile(prof));
    EXPECT_EQ(back.name, prof.name);
    for (const auto& k : detail::key_table()) EXPECT_EQ(back.params.*k.field, prof.params.*k.field) << k.key;
  }
}

TEST(Params, PerMicronMovementIsScaled) {
  auto text = serialize_profile(expected_profile());
  const auto pos = text.find("p_move_per_cell");
  ASSERT_NE(pos, std::string::npos);
  const auto eol = text.find('\n', pos);
  text.replace(pos, eol - pos, "p_move_per_um = 5e-8");
  EXPECT_NEAR(parse_profile(text).params.p_move_per_cell, 1e-6, 1e-18);
}

TEST(Params, RejectsBadInput) {
  const auto good = serialize_profile(expected_profile());
  auto with = [&](const std::string& from, const std::string& to) {
    auto s = good;
    const auto pos = s.find(from);
    EXPECT_NE(pos, std::string::npos) << from;
    s.replace(pos, from.size(), to);
    return s;
  };
  EXPECT_THROW(parse_profile(with("p_double = ", "p_double = 1.5 #")), ValidationError);
  EXPECT_THROW(parse_profile(with("measure_us = ", "measure_us = -1 #")), ValidationError);
  EXPECT_THROW(parse_profile(with("measure_us = ", "measure_us = abc #")), ValidationError);
  EXPECT_THROW(parse_profile(with("memory_lifetime_s = ", "memory_lifetime_s = 0.01 #")), ValidationError);
  EXPECT_THROW(parse_profile(good + "\n[times]\nbogus = 1\n"), ValidationError);
  EXPECT_THROW(parse_profile("[times]\nsingle_gate_us = 1\n"), ValidationError);
  EXPECT_THROW(load_profile("/nonexistent/profile.ini"), ValidationError);
}

TEST(Params, BallisticLatencyIsAffineInDistance) {
  const TechnologyParams t;
  for (int turns : {0, 1, 3}) {
    const double a = ballistic_latency_us(0, turns, t);
    const double slope = ballistic_latency_us(1000, turns, t) - a;
    EXPECT_NEAR(slope, 1000 * t.move_per_cell_us, 1e-9);
    for (double d : {7.0, 250.0, 12345.0}) EXPECT_NEAR(ballistic_latency_us(d, turns, t), a + slope * d / 1000, 1e-9);
  }
  EXPECT_NEAR(ballistic_latency_us(0, 2, t) - ballistic_latency_us(0, 1, t), t.split_us, 1e-12);
}

TEST(Params, MeanComponentFailure) {
  EXPECT_NEAR(mean_component_failure(TechnologyParams{}), (1e-8 + 1e-7 + 1e-8 + 1e-6) / 4, 1e-20);
}
