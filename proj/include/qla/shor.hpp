#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "qla/ecc.hpp"
#include "qla/layout.hpp"
#include "qla/params.hpp"

namespace qla {

struct QclaDepth {
  int toffoli = 0;
  int cnot = 4;
  int not_gates = 2;
};

inline int ceil_log2(std::int64_t n) {
  int k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return k;
}

inline QclaDepth qcla_depth(std::int64_t n) {
  if (n < 2) throw ValidationError("qcla_depth needs n >= 2");
  return {4 * ceil_log2(n), 4, 2};
}

struct ShorCircuitModel {
  std::int64_t n_bits = 0;
  std::int64_t logical_qubits = 0;
  std::int64_t toffoli_count = 0;
  std::int64_t total_gates = 0;
  std::int64_t im_calls = 0;
  std::int64_t mac_calls = 0;
  std::int64_t argset_depth = 0;
  std::int64_t p_extra_qubits = 0;
};

struct ShorCountsRow {
  std::int64_t n_bits;
  std::int64_t logical_qubits;
  std::int64_t toffoli;
  std::int64_t total_gates;
};

inline constexpr std::array<ShorCountsRow, 4> kShorCounts{{
    {128, 37971, 63729, 115033},
    {512, 150771, 397910, 1016295},
    {1024, 301251, 964919, 3270582},
    {2048, 602259, 2301767, 11148214},
}};

inline constexpr int kEcStepsPerToffoli = 15 + 6;  // ancilla prep + completion
inline constexpr double kRepeatFactor = 1.3;
inline constexpr double kArgSetDepth = 2;
// Residual of the 128-bit total: 1.34e6 - 21 * 63730.
inline constexpr double kQftResidual128 = 1.34e6 - 21.0 * 63730.0;

inline double modexp_latency(const ShorCircuitModel& m) {
  if (m.n_bits < 2) throw ValidationError("modexp_latency needs n_bits >= 2");
  if (m.im_calls < 0 || m.mac_calls < 0 || m.argset_depth < 0 || m.p_extra_qubits < 0)
    throw ValidationError("modexp inputs must be non-negative");
  const double qcla = qcla_depth(m.n_bits).toffoli;
  return static_cast<double>(m.im_calls) * m.mac_calls * (qcla + m.argset_depth) +
         3.0 * m.p_extra_qubits * qcla;
}

inline double default_qft_steps(std::int64_t n_bits) {
  const double n = static_cast<double>(n_bits);
  return kQftResidual128 * (n * std::log2(n)) / (128.0 * 7.0);
}

inline double ec_step_count(const ShorCircuitModel& m, double qft_steps) {
  return kEcStepsPerToffoli * static_cast<double>(m.toffoli_count) + qft_steps;
}

inline double ec_step_count(const ShorCircuitModel& m) {
  return ec_step_count(m, default_qft_steps(m.n_bits));
}

// MExp inputs with IM = 2n multiplications, p = n and MAC back-solved from
// the tabulated Toffoli count.
inline ShorCircuitModel model_from_counts(const ShorCountsRow& row) {
  ShorCircuitModel m;
  m.n_bits = row.n_bits;
  m.logical_qubits = row.logical_qubits;
  m.toffoli_count = row.toffoli;
  m.total_gates = row.total_gates;
  m.im_calls = 2 * row.n_bits;
  m.argset_depth = static_cast<std::int64_t>(kArgSetDepth);
  m.p_extra_qubits = row.n_bits;
  const double qcla = qcla_depth(row.n_bits).toffoli;
  const double tail = 3.0 * m.p_extra_qubits * qcla;
  m.mac_calls = std::max<std::int64_t>(
      0, std::llround((row.toffoli - tail) / (m.im_calls * (qcla + m.argset_depth))));
  return m;
}

struct ShorModelLookup {
  ShorCircuitModel model;
  bool interpolated = false;
};

// Exact rows, otherwise power-law interpolation in n between neighbours
// (the end segments extend outside the table).
inline ShorModelLookup shor_model(std::int64_t n_bits) {
  if (n_bits < 8) throw ValidationError("n_bits below 8 is trivial to factor");
  for (const auto& r : kShorCounts)
    if (r.n_bits == n_bits) return {model_from_counts(r), false};
  std::size_t hi = 1;
  while (hi + 1 < kShorCounts.size() && kShorCounts[hi].n_bits < n_bits) ++hi;
  const auto& a = kShorCounts[hi - 1];
  const auto& b = kShorCounts[hi];
  const double t = std::log(static_cast<double>(n_bits) / a.n_bits) / std::log(static_cast<double>(b.n_bits) / a.n_bits);
  auto interp = [t](std::int64_t x, std::int64_t y) {
    return std::llround(std::exp(std::log(static_cast<double>(x)) * (1 - t) + std::log(static_cast<double>(y)) * t));
  };
  ShorCountsRow row{n_bits, interp(a.logical_qubits, b.logical_qubits), interp(a.toffoli, b.toffoli),
                    interp(a.total_gates, b.total_gates)};
  return {model_from_counts(row), true};
}

struct ShorEstimate {
  ShorCircuitModel model;
  bool interpolated = false;
  double qft_steps = 0.0;
  double ec_steps = 0.0;
  double t2_ecc_s = 0.0;
  double repeat_factor = kRepeatFactor;
  double runtime_s = 0.0;
  double hours() const { return runtime_s / 3600.0; }
  double days() const { return runtime_s / 86400.0; }
  double area_m2 = 0.0;
  double required_steps = 0.0;
  double attainable_steps = 0.0;
  bool feasible_at_level2 = false;
};

inline ShorEstimate estimate_shor(std::int64_t n_bits, const EccTiming& timing, const TechnologyParams& t,
                                  const LogicalQubitTile& tile = steane_tile(2), double p_th = 7.5e-5) {
  const auto lookup = shor_model(n_bits);
  ShorEstimate e;
  e.model = lookup.model;
  e.interpolated = lookup.interpolated;
  e.qft_steps = default_qft_steps(n_bits);
  e.ec_steps = ec_step_count(e.model, e.qft_steps);
  e.t2_ecc_s = ecc_latency_s(2, timing);
  e.runtime_s = e.ec_steps * e.t2_ecc_s * e.repeat_factor;
  e.area_m2 = chip_area_m2(e.model.logical_qubits, tile, t);
  e.required_steps = e.ec_steps * static_cast<double>(e.model.logical_qubits);
  e.attainable_steps = feasible_computation_size({mean_component_failure(t), p_th, static_cast<double>(tile.avg_hop_cells), 2});
  e.feasible_at_level2 = e.attainable_steps >= e.required_steps;
  return e;
}

}  // namespace qla
