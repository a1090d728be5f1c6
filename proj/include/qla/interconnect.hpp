#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qla/params.hpp"
#include "qla/rng.hpp"

namespace qla {

class UnreachableFidelity : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Endpoints are positions (island indices) along a line of repeaters.
struct EprPair {
  double fidelity = 1.0;
  int a = 0;
  int b = 1;
};

struct GateNoise {
  double p_double = 0.0;
  double p_measure = 0.0;
  static GateNoise from(const TechnologyParams& t) { return {t.p_double, t.p_measure}; }
};

// Channel model for the spacing study. The distribution error per cell and
// the end-to-end target stand in for purification parameters that are not
// derived from the technology table.
struct RepeaterParams {
  double epr_error_per_cell = 2e-3;
  double target_fidelity = 1.0 - 5e-5;
  int max_rounds = 200;
};

inline double werner_depolarize(double F, double p) { return (1.0 - p) * F + p / 4.0; }

inline double transport_fidelity(double distance_cells, double p_per_cell) {
  if (distance_cells < 0) throw ValidationError("negative distance");
  const double q = 1.0 - std::pow(1.0 - p_per_cell, distance_cells);
  return 1.0 - 0.75 * q;
}

inline double transport_fidelity(double distance_cells, const TechnologyParams& t) {
  return transport_fidelity(distance_cells, t.p_move_per_cell);
}

struct PurifyResult {
  EprPair pair;
  double p_success = 1.0;
  bool success = true;
};

// Bennett recurrence on Werner pairs; b is consumed. Gate and measurement
// noise depolarize the inputs before the ideal map.
inline PurifyResult purify(const EprPair& a, const EprPair& b, const GateNoise& g = {}, Rng* rng = nullptr) {
  const bool same = (a.a == b.a && a.b == b.b) || (a.a == b.b && a.b == b.a);
  if (!same) throw ValidationError("purify needs pairs with the same endpoints");
  const double gate = 1.0 - (1.0 - g.p_double) * (1.0 - g.p_double);
  const double meas = 1.0 - (1.0 - g.p_measure) * (1.0 - g.p_measure);
  const double Fa = werner_depolarize(a.fidelity, gate);
  const double Fb = werner_depolarize(werner_depolarize(b.fidelity, gate), meas);
  const double num = Fa * Fb + (1 - Fa) * (1 - Fb) / 9.0;
  const double P = Fa * Fb + Fa * (1 - Fb) / 3.0 + Fb * (1 - Fa) / 3.0 + 5.0 * (1 - Fa) * (1 - Fb) / 9.0;
  PurifyResult r;
  r.pair = a;
  r.pair.fidelity = num / P;
  r.p_success = P;
  r.success = rng ? rng->uniform() < P : true;
  return r;
}

inline EprPair entanglement_swap(const EprPair& ab, const EprPair& bc, const GateNoise& g = {}) {
  int left, mid, right;
  if (ab.b == bc.a) { left = ab.a; mid = ab.b; right = bc.b; }
  else if (ab.b == bc.b) { left = ab.a; mid = ab.b; right = bc.a; }
  else if (ab.a == bc.a) { left = ab.b; mid = ab.a; right = bc.b; }
  else if (ab.a == bc.b) { left = ab.b; mid = ab.a; right = bc.a; }
  else throw ValidationError("swap needs a shared middle endpoint");
  (void)mid;
  if (left == right) throw ValidationError("swap would join an endpoint to itself");
  const double F = ab.fidelity * bc.fidelity + (1 - ab.fidelity) * (1 - bc.fidelity) / 3.0;
  const double err = 1.0 - (1.0 - g.p_double) * (1.0 - g.p_measure) * (1.0 - g.p_measure);
  return {werner_depolarize(F, err), left, right};
}

struct ChainResult {
  double fidelity = 1.0;
  int stages = 0;
};

// Adjacent pairs are joined in parallel stages; an odd pair waits a stage.
inline ChainResult swap_chain(double F, int hops, const GateNoise& g = {}) {
  if (hops < 1) throw ValidationError("chain needs at least one hop");
  std::vector<EprPair> level;
  level.reserve(hops);
  for (int i = 0; i < hops; ++i) level.push_back({F, i, i + 1});
  ChainResult r;
  while (level.size() > 1) {
    std::vector<EprPair> next;
    next.reserve(level.size() / 2 + 1);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(entanglement_swap(level[i], level[i + 1], g));
    if (level.size() % 2) next.push_back(level.back());
    level.swap(next);
    ++r.stages;
  }
  r.fidelity = level.front().fidelity;
  return r;
}

struct RepeaterChannel {
  double total_distance = 0;
  double island_spacing = 0;
  int hop_count = 1;
  int purification_rounds_per_hop = 0;
  double per_hop_base_fidelity = 1.0;
  double per_hop_fidelity = 1.0;
  double final_fidelity = 1.0;
  int swap_stages = 0;
  double distribution_us = 0;
  double purification_us = 0;
  double swap_us = 0;
  double time_us() const { return distribution_us + purification_us + swap_us; }
};

inline RepeaterChannel plan_channel(double distance, double spacing, const TechnologyParams& t,
                                    const RepeaterParams& rp = {}) {
  if (!(spacing > 0)) throw ValidationError("spacing must be positive");
  if (spacing > distance) throw ValidationError("spacing larger than distance");
  RepeaterChannel c;
  c.total_distance = distance;
  c.island_spacing = spacing;
  c.hop_count = static_cast<int>(std::ceil(distance / spacing - 1e-9));
  c.per_hop_base_fidelity = transport_fidelity(spacing, rp.epr_error_per_cell);
  const GateNoise g = GateNoise::from(t);
  const double step_us = t.double_gate_us + t.measure_us;
  double F = c.per_hop_base_fidelity;
  for (int n = 0; n <= rp.max_rounds; ++n) {
    const ChainResult chain = swap_chain(F, c.hop_count, g);
    if (chain.fidelity >= rp.target_fidelity) {
      c.purification_rounds_per_hop = n;
      c.per_hop_fidelity = F;
      c.final_fidelity = chain.fidelity;
      c.swap_stages = chain.stages;
      c.distribution_us = ballistic_latency_us(spacing / 2.0, 0, t);
      c.purification_us = n * step_us;
      c.swap_us = chain.stages * step_us;
      return c;
    }
    const double next = purify({F, 0, 1}, {F, 0, 1}, g).pair.fidelity;
    if (!(next > F)) break;
    F = next;
  }
  throw UnreachableFidelity("target fidelity unreachable at this spacing");
}

inline double connection_time_us(double distance, double spacing, const TechnologyParams& t,
                                 const RepeaterParams& rp = {}) {
  return plan_channel(distance, spacing, t, rp).time_us();
}

inline const std::vector<double>& default_spacings() {
  static const std::vector<double> s{35, 70, 100, 350, 500, 1000};
  return s;
}

// Candidates longer than the distance, or unable to reach the target, are
// skipped; ties go to the smaller spacing.
inline double optimal_spacing(double distance, const std::vector<double>& candidates, const TechnologyParams& t,
                              const RepeaterParams& rp = {}) {
  if (candidates.empty()) throw ValidationError("no spacing candidates");
  std::optional<double> best;
  double best_time = std::numeric_limits<double>::infinity();
  for (double s : candidates) {
    if (s > distance) continue;
    try {
      const double tt = connection_time_us(distance, s, t, rp);
      if (tt < best_time || (tt == best_time && best && s < *best)) {
        best_time = tt;
        best = s;
      }
    } catch (const UnreachableFidelity&) {
    }
  }
  if (!best) throw UnreachableFidelity("all spacing candidates infeasible");
  return *best;
}

}  // namespace qla
