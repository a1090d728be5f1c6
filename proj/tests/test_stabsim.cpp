#include <gtest/gtest.h>

#include <cmath>

#include "qla/rng.hpp"
#include "qla/stabsim/bitflip.hpp"
#include "qla/stabsim/circuit.hpp"
#include "qla/stabsim/frame.hpp"
#include "qla/stabsim/tableau.hpp"

using namespace qla;

TEST(Tableau, InitialStateMeasuresZero) {
  TableauEngine t(3);
  for (int q = 0; q < 3; ++q) EXPECT_FALSE(t.measure_z(q));
  t.x(1);
  EXPECT_TRUE(t.measure_z(1));
}

TEST(Tableau, BellPairCorrelations) {
  int ones = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    TableauEngine t(2, s);
    t.h(0);
    t.cnot(0, 1);
    const bool a = t.measure_z(0);
    EXPECT_EQ(a, t.measure_z(1));
    ones += a;
  }
  EXPECT_GT(ones, 60);
  EXPECT_LT(ones, 140);
}

TEST(Tableau, PlusStateIsDeterministicInXBasis) {
  TableauEngine t(1, 5);
  t.h(0);
  EXPECT_FALSE(t.measure_x(0));
  t.z(0);
  EXPECT_TRUE(t.measure_x(0));
}

TEST(Tableau, PhaseGateSquaredIsZ) {
  TableauEngine t(1);
  t.h(0);
  t.s(0);
  t.s(0);
  EXPECT_TRUE(t.measure_x(0));
}

TEST(Tableau, GhzParity) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    TableauEngine t(4, s);
    t.h(0);
    for (int q = 1; q < 4; ++q) t.cnot(0, q);
    for (int q = 0; q < 4; ++q) t.h(q);
    bool parity = false;
    for (int q = 0; q < 4; ++q) parity ^= t.measure_z(q);
    EXPECT_FALSE(parity);
  }
}

TEST(Tableau, StaysSymplecticUnderRandomCliffords) {
  Rng rng(11);
  TableauEngine t(9, 3);
  for (int step = 0; step < 2000; ++step) {
    const int a = static_cast<int>(rng.below(9));
    int b = static_cast<int>(rng.below(8));
    if (b >= a) ++b;
    switch (rng.below(5)) {
      case 0: t.h(a); break;
      case 1: t.s(a); break;
      case 2: t.cnot(a, b); break;
      case 3: t.measure_z(a); break;
      default: t.reset(a); break;
    }
    if (step % 100 == 0) {
      ASSERT_TRUE(t.check_symplectic());
    }
  }
  EXPECT_TRUE(t.check_symplectic());
}

namespace {

struct Op {
  int kind, a, b;
};

// Random Clifford U followed by U^-1 and a Z readout; every outcome is
// deterministic in the noiseless circuit.
CircuitIR mirror_circuit(int n, int depth, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Op> ops;
  for (int i = 0; i < depth; ++i) {
    const int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n - 1));
    if (b >= a) ++b;
    ops.push_back({static_cast<int>(rng.below(3)), a, b});
  }
  CircuitIR c(n);
  for (int q = 0; q < n; ++q) c.reset(q, true);
  auto emit = [&](const Op& o, bool inverse) {
    if (o.kind == 0) c.gate(GateKind::H, o.a);
    if (o.kind == 1) {
      c.gate(GateKind::S, o.a);
      if (inverse) c.gate(GateKind::S, o.a).gate(GateKind::S, o.a);
    }
    if (o.kind == 2) c.gate(GateKind::CNOT, o.a, o.b);
  };
  for (const auto& o : ops) emit(o, false);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) emit(*it, true);
  for (int q = 0; q < n; ++q) c.observable.push_back(c.measure(q));
  return c;
}

}  // namespace

TEST(Frame, AgreesWithTableauOnRandomNoisyCircuits) {
  TechnologyParams timing;
  NoiseModel noise;
  noise.p_single = noise.p_double = noise.p_measure = 0.05;
  for (int n = 2; n <= 10; ++n) {
    for (std::uint64_t s = 0; s < 40; ++s) {
      const auto c = mirror_circuit(n, 30, derive_seed(n, s));
      const auto tab = run_noisy<TableauEngine>(c, noise, s, timing);
      const auto frm = run_noisy<FrameEngine>(c, noise, s, timing);
      ASSERT_EQ(tab.outcomes, frm.outcomes) << "n=" << n << " seed=" << s;
      ASSERT_EQ(tab.logical_failure, frm.logical_failure);
    }
  }
}

TEST(Frame, InjectedErrorPropagatesThroughCnot) {
  FrameEngine f(2);
  f.inject(0, Pauli::X);
  f.cnot(0, 1);
  EXPECT_TRUE(f.measure_z(0));
  EXPECT_TRUE(f.measure_z(1));
  FrameEngine g(2);
  g.inject(1, Pauli::Z);
  g.cnot(0, 1);
  EXPECT_TRUE(g.measure_x(0));
  EXPECT_TRUE(g.measure_x(1));
  g.h(0);
  EXPECT_TRUE(g.measure_z(0));
}

TEST(Circuit, ValidationRejectsMalformed) {
  CircuitIR c(2);
  c.gate(GateKind::CNOT, 0, 0);
  EXPECT_THROW(c.validate(), ValidationError);
  CircuitIR d(1);
  d.gate(GateKind::H, 3);
  EXPECT_THROW(d.validate(), ValidationError);
  CircuitIR e(1);
  e.observable = {0};
  EXPECT_THROW(e.validate(), ValidationError);
  CircuitIR f(0);
  EXPECT_THROW(f.validate(), ValidationError);
}

TEST(Circuit, NoiselessRunNeverFails) {
  const auto c = mirror_circuit(6, 40, 3);
  for (std::uint64_t s = 0; s < 20; ++s) EXPECT_FALSE(run_noisy<TableauEngine>(c, NoiseModel::noiseless(), s).logical_failure);
}

TEST(Circuit, ErrorLogRecordsInjections) {
  const auto c = mirror_circuit(4, 10, 9);
  NoiseModel noise;
  noise.p_single = noise.p_double = 1.0;
  const auto r = run_noisy<FrameEngine>(c, noise, 1, {}, true);
  EXPECT_FALSE(r.errors.empty());
}

TEST(Executor, AsapTimingAndIdleDephasing) {
  const TechnologyParams t;
  Executor<FrameEngine> ex(2, NoiseModel::noiseless(), t, 0);
  ex.h(0);
  ex.h(0);
  ex.cnot(0, 1);
  EXPECT_DOUBLE_EQ(ex.time_us(0), 2 * t.single_gate_us + t.double_gate_us);
  EXPECT_DOUBLE_EQ(ex.time_us(1), ex.time_us(0));
  ex.move(1, 100, 1);
  EXPECT_DOUBLE_EQ(ex.time_us(1), ex.time_us(0) + ballistic_latency_us(100, 1, t));
  EXPECT_NEAR(dephasing_probability(10.0, 10.0), 0.5 * (1 - std::exp(-1.0)), 1e-15);
  EXPECT_EQ(dephasing_probability(1.0, 0.0), 0.0);
  EXPECT_NEAR(composed_depolarizing(1e-3, 1), 1e-3, 1e-15);
}

TEST(Executor, IdleWindowDephasesAtExpectedRate) {
  TechnologyParams t;
  NoiseModel noise;
  noise.memory_lifetime_s = 1e-3;
  t.measure_us = 1000.0;
  const double want = dephasing_probability(999e-6, 1e-3);
  int flips = 0;
  const int n = 20000;
  for (int s = 0; s < n; ++s) {
    Executor<FrameEngine> ex(2, noise, t, derive_seed(s));
    ex.h(0);
    ex.measure_z(1);
    ex.sync_all();
    flips += ex.engine().frame(0) == Pauli::Z;
  }
  const double rate = static_cast<double>(flips) / n;
  EXPECT_NEAR(rate, want, 4 * std::sqrt(want * (1 - want) / n));
}

TEST(Bitflip, MatchesMajorityVoteOracle) {
  const auto c = bitflip_memory_circuit();
  for (double p : {0.05, 0.2}) {
    const int n = 20000;
    int fails = 0;
    const auto ref = reference_outcomes(c, {}, 0);
    for (int s = 0; s < n; ++s) fails += run_noisy<FrameEngine>(c, bitflip_noise(p), derive_seed(7, s), ref).logical_failure;
    const double want = 3 * p * p - 2 * p * p * p;
    EXPECT_NEAR(static_cast<double>(fails) / n, want, 3.5 * std::sqrt(want * (1 - want) / n)) << p;
  }
}

TEST(Bitflip, SingleFlipsAreCorrected) {
  const auto c = bitflip_memory_circuit();
  for (int q = -1; q < 3; ++q) {
    CircuitIR d(5);
    for (const auto& op : c.ops) {
      d.ops.push_back(op);
      if (q >= 0 && op.kind == OpKind::reset && op.a == 4) d.gate(GateKind::X, q, -1, true);
    }
    d.conditionals = c.conditionals;
    d.num_measurements = c.num_measurements;
    d.observable = c.observable;
    const auto out = reference_outcomes(d, {}, 0);
    const unsigned syndrome = out[0] | (out[1] << 1);
    const unsigned want[] = {0u, 1u, 3u, 2u};
    EXPECT_EQ(syndrome, want[q + 1]) << q;
    EXPECT_EQ(out[2], 0) << q;
  }
}
