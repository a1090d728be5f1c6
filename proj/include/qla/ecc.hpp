#pragma once

#include <cmath>
#include <vector>

#include "qla/layout.hpp"
#include "qla/params.hpp"

namespace qla {

// Stage counts of the reconstructed Steane extraction schedule. A slot is one
// ballistic hop of avg_hop_cells with slot_turns turns, a cooling step and a
// two-qubit gate; a level-2 unit is a slot followed by a level-1 correction.
struct EccSchedule {
  int slot_turns = 2;
  int l1_encode_slots = 11;
  int l1_verify_slots = 7;
  int l1_interact_slots = 7;
  int l2_prep_units = 2;
  int l2_syndrome_units = 4;
};

struct EccTiming {
  int level = 0;
  std::vector<double> t_syndrome_s;     // index by level, [0] unused
  double t_logical_gate_s = 1e-6;
  std::vector<double> nontrivial_rate;  // index by level, [0] unused
};

inline constexpr double kNontrivialRateL1 = 3.35e-4;
inline constexpr double kNontrivialRateL2 = 7.92e-4;

struct SyndromeBreakdown {
  double prep_s = 0.0;
  double interact_s = 0.0;
  double measure_s = 0.0;
  double total_s() const { return prep_s + interact_s + measure_s; }
};

inline double ecc_latency_s(int L, const EccTiming& timing) {
  if (L < 0) throw ValidationError("level must be >= 0");
  if (L == 0) return 0.0;
  if (L > timing.level || static_cast<int>(timing.t_syndrome_s.size()) <= L ||
      static_cast<int>(timing.nontrivial_rate.size()) <= L)
    throw ValidationError("no timing data for level " + std::to_string(L));
  const double T = timing.t_syndrome_s[L];
  const double q = timing.nontrivial_rate[L];
  return (1.0 - q) * 2.0 * T + q * 2.0 * (2.0 * T + timing.t_logical_gate_s + ecc_latency_s(L - 1, timing));
}

inline double slot_time_us(const TechnologyParams& t, const LogicalQubitTile& tile, const EccSchedule& s) {
  return ballistic_latency_us(tile.avg_hop_cells, s.slot_turns, t) + t.cooling_us + t.double_gate_us;
}

// Level 2 depends on the level-1 correction latency and therefore on
// nontrivial_rate_l1.
inline SyndromeBreakdown syndrome_time(int L, const TechnologyParams& t, const LogicalQubitTile& tile,
                                       const EccSchedule& s = {},
                                       double nontrivial_rate_l1 = kNontrivialRateL1) {
  if (L != 1 && L != 2) throw ValidationError("syndrome_time supports levels 1 and 2");
  if (tile.code != CodeKind::steane_7_1_3) throw ValidationError("syndrome_time needs a Steane tile");
  const double slot = slot_time_us(t, tile, s);
  SyndromeBreakdown b1;
  b1.prep_s = (t.cooling_us + t.single_gate_us + (2 * s.l1_encode_slots + s.l1_verify_slots) * slot +
               t.measure_us) * 1e-6;
  b1.interact_s = s.l1_interact_slots * slot * 1e-6;
  b1.measure_s = t.measure_us * 1e-6;
  if (L == 1) return b1;

  EccTiming l1{1, {0.0, b1.total_s()}, t.single_gate_us * 1e-6, {0.0, nontrivial_rate_l1}};
  const double unit = slot * 1e-6 + ecc_latency_s(1, l1);
  SyndromeBreakdown b2;
  b2.prep_s = b1.prep_s + s.l2_prep_units * unit + t.measure_us * 1e-6;
  b2.interact_s = s.l2_syndrome_units * unit;
  b2.measure_s = t.measure_us * 1e-6;
  return b2;
}

inline EccTiming calibrated_timing(const TechnologyParams& t, const LogicalQubitTile& tile,
                                   const EccSchedule& s = {}, double q1 = kNontrivialRateL1,
                                   double q2 = kNontrivialRateL2) {
  EccTiming e;
  e.level = 2;
  e.t_logical_gate_s = t.single_gate_us * 1e-6;
  e.t_syndrome_s = {0.0, syndrome_time(1, t, tile, s, q1).total_s(), syndrome_time(2, t, tile, s, q1).total_s()};
  e.nontrivial_rate = {0.0, q1, q2};
  return e;
}

struct RecursionModel {
  double p0 = 2.8e-7;
  double p_th = 7.5e-5;
  double r = 12.0;
  int L = 2;
};

inline double recursive_failure(const RecursionModel& m) {
  if (!(m.p0 > 0.0 && m.p0 < 1.0) || !(m.p_th > 0.0 && m.p_th < 1.0) || m.r < 1.0 || m.L < 0)
    throw ValidationError("recursion model out of range");
  return (m.p_th / std::pow(m.r, m.L)) * std::pow(m.p0 / m.p_th, std::ldexp(1.0, m.L));
}

inline double feasible_computation_size(const RecursionModel& m) {
  const double pf = recursive_failure(m);
  if (!(pf > 0.0)) throw ValidationError("recursive failure underflows to zero");
  return 1.0 / pf;
}

}  // namespace qla
