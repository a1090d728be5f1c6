#include <gtest/gtest.h>

#include "qla/shor.hpp"

using namespace qla;

TEST(Shor, QclaDepth) {
  EXPECT_EQ(qcla_depth(128).toffoli, 28);
  EXPECT_EQ(qcla_depth(128).cnot, 4);
  EXPECT_EQ(qcla_depth(1024).toffoli, 40);
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(129), 8);
}

TEST(Shor, TabulatedRowsAreExact) {
  for (const auto& row : kShorCounts) {
    const auto m = shor_model(row.n_bits);
    EXPECT_FALSE(m.interpolated);
    EXPECT_EQ(m.model.logical_qubits, row.logical_qubits);
    EXPECT_EQ(m.model.toffoli_count, row.toffoli);
    EXPECT_EQ(m.model.total_gates, row.total_gates);
  }
}

TEST(Shor, InterpolatedSizesAreBracketed) {
  const auto m = shor_model(768);
  EXPECT_TRUE(m.interpolated);
  EXPECT_GT(m.model.logical_qubits, shor_model(512).model.logical_qubits);
  EXPECT_LT(m.model.logical_qubits, shor_model(1024).model.logical_qubits);
}

TEST(Shor, EcStepsLinearInToffoliCount) {
  ShorCircuitModel m;
  m.n_bits = 128;
  m.toffoli_count = 1000;
  const double a = ec_step_count(m, 0.0);
  m.toffoli_count = 3000;
  EXPECT_NEAR(ec_step_count(m, 0.0), 3 * a, 1e-9);
  EXPECT_NEAR(a, 21.0 * 1000, 1e-9);
  EXPECT_NEAR(ec_step_count(m, 500.0), 3 * a + 500.0, 1e-9);
}

TEST(Shor, RuntimeIsStepsTimesLatencyTimesRepeat) {
  const TechnologyParams t;
  const auto timing = calibrated_timing(t, steane_tile(2));
  const auto e = estimate_shor(128, timing, t);
  EXPECT_NEAR(e.runtime_s, e.ec_steps * ecc_latency_s(2, timing) * 1.3, 1e-6);
  EXPECT_NEAR(e.required_steps, e.ec_steps * 37971, 1.0);
}

TEST(Shor, MonotoneInBits) {
  const TechnologyParams t;
  const auto timing = calibrated_timing(t, steane_tile(2));
  double prev_days = 0, prev_area = 0;
  for (std::int64_t n : {128, 256, 512, 768, 1024, 1536, 2048}) {
    const auto e = estimate_shor(n, timing, t);
    EXPECT_GT(e.days(), prev_days) << n;
    EXPECT_GT(e.area_m2, prev_area) << n;
    prev_days = e.days();
    prev_area = e.area_m2;
  }
}

TEST(Shor, RejectsOutOfRange) {
  const TechnologyParams t;
  const auto timing = calibrated_timing(t, steane_tile(2));
  EXPECT_THROW(estimate_shor(4, timing, t), ValidationError);
  EXPECT_TRUE(estimate_shor(4096, timing, t).interpolated);
}
