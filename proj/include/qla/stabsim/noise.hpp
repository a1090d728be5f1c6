#pragma once

#include <cmath>
#include <stdexcept>

#include "qla/params.hpp"

namespace qla {

enum class NoiseChannel { depolarizing, bitflip };

struct NoiseModel {
  double p_single = 0.0;
  double p_double = 0.0;
  double p_measure = 0.0;
  double p_move = 0.0;  // per cell
  double p_prep = 0.0;
  double memory_lifetime_s = 0.0;  // 0 disables idle dephasing
  NoiseChannel channel = NoiseChannel::depolarizing;

  void validate() const {
    for (double p : {p_single, p_double, p_measure, p_move, p_prep})
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("noise probability out of range");
    if (memory_lifetime_s < 0.0) throw ValidationError("negative memory lifetime");
  }

  static NoiseModel noiseless() { return {}; }

  static NoiseModel from_params(const TechnologyParams& t) {
    NoiseModel n;
    n.p_single = t.p_single;
    n.p_double = t.p_double;
    n.p_measure = t.p_measure;
    n.p_move = t.p_move_per_cell;
    n.p_prep = t.p_single;
    n.memory_lifetime_s = t.memory_lifetime_s;
    return n;
  }

  // Joint component rate p with movement held at p_move_per_cell.
  static NoiseModel component(double p, const TechnologyParams& t) {
    NoiseModel n = from_params(t);
    n.p_single = n.p_double = n.p_measure = n.p_prep = p;
    return n;
  }
};

// n cells of per-cell depolarizing compose to one depolarizing channel.
inline double composed_depolarizing(double p, double cells) {
  if (cells <= 0.0 || p <= 0.0) return 0.0;
  return 0.75 * (1.0 - std::pow(1.0 - 4.0 * p / 3.0, cells));
}

// Z error probability for an idle window under T2 = lifetime dephasing.
inline double dephasing_probability(double seconds, double lifetime_s) {
  if (lifetime_s <= 0.0 || seconds <= 0.0) return 0.0;
  return 0.5 * (1.0 - std::exp(-seconds / lifetime_s));
}

}  // namespace qla
