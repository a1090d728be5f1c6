#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "qla/layout.hpp"
#include "qla/params.hpp"
#include "qla/rng.hpp"
#include "qla/stabsim/executor.hpp"
#include "qla/stabsim/frame.hpp"
#include "qla/stabsim/steane.hpp"

namespace qla {

struct TrialOutcome {
  bool failure = false;
  steane::EcCounters counters;
};

// One trial: perfect |0>, noisy transversal H, one round of correction at the
// given level, then ideal decoding of the logical X value.
template <typename Engine>
TrialOutcome steane_trial(int level, const NoiseModel& noise, const TechnologyParams& timing,
                          const steane::ProtocolConfig& cfg, std::uint64_t seed) {
  using Ex = Executor<Engine>;
  TrialOutcome out;
  const std::uint64_t noise_seed = derive_seed(seed, 1);
  const std::uint64_t meas_seed = derive_seed(seed, 2);
  if (level == 0) {
    Ex ex(1, noise, timing, noise_seed, meas_seed);
    ex.set_noiseless(true);
    ex.reset(0);
    ex.set_noiseless(false);
    ex.h(0);
    ex.set_noiseless(true);
    out.failure = ex.measure_x(0);
    return out;
  }
  steane::QubitAllocator alloc;
  if (level == 1) {
    Ex ex(steane::kL1Qubits, noise, timing, noise_seed, meas_seed);
    const auto u = steane::make_l1(alloc, &ex);
    steane::Protocol<Ex> proto(ex, cfg, out.counters);
    steane::ideal_zero_l1(ex, u.data);
    for (int q : u.data.q) ex.h(q);
    proto.ec_l1(u);
    ex.sync(u.data.q);
    ex.set_noiseless(true);
    steane::Bits7 m{};
    for (int j = 0; j < 7; ++j) m[j] = ex.measure_x(u.data.q[j]);
    out.failure = steane::decode_bit(m) != 0;
    return out;
  }
  if (level == 2) {
    Ex ex(steane::kL2Qubits, noise, timing, noise_seed, meas_seed);
    const auto q = steane::make_l2(alloc, &ex);
    steane::Protocol<Ex> proto(ex, cfg, out.counters);
    steane::ideal_zero_l2(ex, q.data);
    for (const auto& u : q.data) proto.l2_h_block(u);
    proto.ec_l2(q);
    std::vector<int> data;
    for (const auto& u : q.data) data.insert(data.end(), u.data.q.begin(), u.data.q.end());
    ex.sync(data);
    ex.set_noiseless(true);
    out.failure = steane::decode_bit(proto.decode_blocks_x(q.data)) != 0;
    return out;
  }
  throw ValidationError("threshold levels are 0, 1 and 2");
}

struct ThresholdPoint {
  double p = 0.0;
  int level = 0;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  steane::EcCounters counters;

  double rate() const { return trials ? static_cast<double>(failures) / trials : 0.0; }
  double stderr_() const {
    if (!trials) return 0.0;
    const double r = rate();
    return std::sqrt(r * (1.0 - r) / trials);
  }
  double l1_nontrivial_rate() const {
    return counters.l1_first ? static_cast<double>(counters.l1_nontrivial) / counters.l1_first : 0.0;
  }
  double l1_nontrivial_stderr() const {
    if (!counters.l1_first) return 0.0;
    const double r = l1_nontrivial_rate();
    return std::sqrt(r * (1.0 - r) / counters.l1_first);
  }
  double l2_nontrivial_rate() const {
    return counters.l2_first ? static_cast<double>(counters.l2_nontrivial) / counters.l2_first : 0.0;
  }
};

inline unsigned default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

// Trials are seeded by (seed, tag, trial) so the sums do not depend on the
// thread count or on scheduling order.
inline ThresholdPoint run_point(int level, double p, const NoiseModel& noise, const TechnologyParams& timing,
                                const steane::ProtocolConfig& cfg, std::uint64_t trials, std::uint64_t seed,
                                std::uint64_t tag, unsigned threads) {
  ThresholdPoint pt;
  pt.p = p;
  pt.level = level;
  pt.trials = trials;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(1, trials / 64))));
  constexpr std::uint64_t kChunk = 64;
  std::atomic<std::uint64_t> next{0};
  std::mutex mu;
  auto worker = [&] {
    std::uint64_t fails = 0;
    steane::EcCounters c;
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= trials) break;
      const std::uint64_t end = std::min(trials, begin + kChunk);
      for (std::uint64_t t = begin; t < end; ++t) {
        const auto r = steane_trial<FrameEngine>(level, noise, timing, cfg, derive_seed(seed, tag, level, t));
        fails += r.failure;
        c += r.counters;
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    pt.failures += fails;
    pt.counters += c;
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return pt;
}

struct ThresholdCrossing {
  double p_star = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool found = false;
};

// Log-log interpolation of the first interval where level 2 stops beating
// level 1; bounds come from shifting both curves by one standard error.
inline std::optional<double> crossing_of(const std::vector<double>& p, const std::vector<double>& r1,
                                         const std::vector<double>& r2) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (r1[i] <= 0 || r2[i] <= 0 || r1[i + 1] <= 0 || r2[i + 1] <= 0) continue;
    const double d0 = std::log(r2[i]) - std::log(r1[i]);
    const double d1 = std::log(r2[i + 1]) - std::log(r1[i + 1]);
    if (d0 < 0 && d1 >= 0) {
      const double f = d0 / (d0 - d1);
      return std::exp(std::log(p[i]) + f * (std::log(p[i + 1]) - std::log(p[i])));
    }
  }
  return std::nullopt;
}

inline ThresholdCrossing find_crossing(const std::vector<ThresholdPoint>& l1, const std::vector<ThresholdPoint>& l2) {
  ThresholdCrossing c;
  std::vector<double> p, r1, r2, r1u, r1d, r2u, r2d;
  for (std::size_t i = 0; i < l1.size() && i < l2.size(); ++i) {
    p.push_back(l1[i].p);
    r1.push_back(l1[i].rate());
    r2.push_back(l2[i].rate());
    r1u.push_back(l1[i].rate() + l1[i].stderr_());
    r1d.push_back(std::max(0.0, l1[i].rate() - l1[i].stderr_()));
    r2u.push_back(l2[i].rate() + l2[i].stderr_());
    r2d.push_back(std::max(0.0, l2[i].rate() - l2[i].stderr_()));
  }
  const auto mid = crossing_of(p, r1, r2);
  if (!mid) return c;
  c.found = true;
  c.p_star = *mid;
  const auto a = crossing_of(p, r1d, r2u);
  const auto b = crossing_of(p, r1u, r2d);
  c.lo = a ? std::min(*a, c.p_star) : p.front();
  c.hi = b ? std::max(*b, c.p_star) : p.back();
  return c;
}

inline constexpr std::uint64_t kMinPrecisionTrials = 1000;

inline std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0) || !(hi >= lo)) throw ValidationError("grid needs 0 < p_min <= p_max");
  if (points < 1) throw ValidationError("grid needs at least one point");
  std::vector<double> g;
  for (int i = 0; i < points; ++i)
    g.push_back(points == 1 ? lo : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (points - 1)));
  g.front() = lo;
  if (points > 1) g.back() = hi;
  return g;
}

struct ThresholdSweep {
  std::vector<ThresholdPoint> points;
  ThresholdCrossing crossing;
  bool low_precision = false;  // fewer than kMinPrecisionTrials per point
};

inline ThresholdSweep threshold_sweep(const std::vector<int>& levels, const std::vector<double>& p_grid,
                                      std::uint64_t trials, std::uint64_t seed, const TechnologyParams& base,
                                      const LogicalQubitTile& tile = steane_tile(2),
                                      unsigned threads = default_threads()) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  if (p_grid.empty()) throw ValidationError("empty p grid");
  if (!std::is_sorted(p_grid.begin(), p_grid.end())) throw ValidationError("p grid must be ascending");
  for (double p : p_grid)
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("grid probability out of range");
  for (int l : levels)
    if (l < 0 || l > 2) throw ValidationError("threshold levels are 0, 1 and 2");
  steane::ProtocolConfig cfg;
  cfg.hop_cells = tile.avg_hop_cells;
  ThresholdSweep out;
  out.low_precision = trials < kMinPrecisionTrials;
  std::vector<ThresholdPoint> l1, l2;
  for (int level : levels) {
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
      const auto noise = NoiseModel::component(p_grid[i], base);
      auto pt = run_point(level, p_grid[i], noise, base, cfg, trials, seed, i, threads);
      if (level == 1) l1.push_back(pt);
      if (level == 2) l2.push_back(pt);
      out.points.push_back(pt);
    }
  }
  if (!l1.empty() && !l2.empty()) out.crossing = find_crossing(l1, l2);
  return out;
}

}  // namespace qla
