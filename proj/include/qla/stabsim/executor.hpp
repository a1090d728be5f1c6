#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "qla/params.hpp"
#include "qla/rng.hpp"
#include "qla/stabsim/noise.hpp"
#include "qla/stabsim/pauli.hpp"

namespace qla {

struct InjectedError {
  std::uint64_t op = 0;
  int qubit = 0;
  Pauli pauli = Pauli::I;
  bool operator==(const InjectedError&) const = default;
};

// Runs operations on an engine with ASAP per-qubit timing, optional shared
// resources that serialize their operations, and stochastic Pauli noise. Noise
// draws use their own stream so every engine sees the same faults.
template <typename Engine>
class Executor {
 public:
  Executor(int n, const NoiseModel& noise, const TechnologyParams& timing, std::uint64_t noise_seed,
           std::uint64_t measure_seed = 0)
      : engine_(n, measure_seed), noise_(noise), timing_(timing), rng_(noise_seed), time_(n, 0.0) {
    noise_.validate();
  }

  Engine& engine() { return engine_; }
  const NoiseModel& noise() const { return noise_; }
  const TechnologyParams& timing() const { return timing_; }
  int num_qubits() const { return engine_.num_qubits(); }

  int new_resource() {
    res_time_.push_back(0.0);
    return static_cast<int>(res_time_.size()) - 1;
  }

  void set_noiseless(bool v) { noiseless_ = v; }
  bool noiseless() const { return noiseless_; }
  void enable_log(bool v) { logging_ = v; }
  const std::vector<InjectedError>& error_log() const { return log_; }
  std::uint64_t op_count() const { return ops_; }
  double time_us(int q) const { return time_[q]; }
  double makespan_us() const { return *std::max_element(time_.begin(), time_.end()); }

  void gate(GateKind g, int a, int b = -1, int res = -1) {
    switch (g) {
      case GateKind::CNOT: cnot(a, b, res); return;
      default: single(g, a, res); return;
    }
  }

  void single(GateKind g, int q, int res = -1) {
    begin({q}, res, timing_.single_gate_us);
    switch (g) {
      case GateKind::I: break;
      case GateKind::H: engine_.h(q); break;
      case GateKind::S: engine_.s(q); break;
      case GateKind::X: engine_.x(q); break;
      case GateKind::Y: engine_.y(q); break;
      case GateKind::Z: engine_.z(q); break;
      case GateKind::CNOT: throw std::invalid_argument("CNOT is not a single-qubit gate");
    }
    fault1(q, noise_.p_single);
  }

  void h(int q, int res = -1) { single(GateKind::H, q, res); }

  void cnot(int c, int t, int res = -1) {
    begin({c, t}, res, timing_.double_gate_us);
    engine_.cnot(c, t);
    fault2(c, t, noise_.p_double);
  }

  void move(int q, double cells, int turns, int res = -1) {
    begin({q}, res, ballistic_latency_us(cells, turns, timing_));
    fault1(q, composed_depolarizing(noise_.p_move, cells));
  }

  void cool(int q, int res = -1) { begin({q}, res, timing_.cooling_us); }

  void reset(int q, int res = -1) {
    begin({q}, res, timing_.single_gate_us);
    engine_.reset(q);
    fault1(q, noise_.p_prep);
  }

  bool measure_z(int q, int res = -1) {
    begin({q}, res, timing_.measure_us);
    return engine_.measure_z(q) ^ flip(noise_.p_measure);
  }

  bool measure_x(int q, int res = -1) {
    begin({q}, res, timing_.measure_us);
    return engine_.measure_x(q) ^ flip(noise_.p_measure);
  }

  // Start a not-yet-prepared qubit later; it is reset before use, so the
  // skipped window carries no error.
  void defer(int q, double t_us) {
    if (!noiseless_ && t_us > time_[q]) time_[q] = t_us;
  }
  void defer_resource(int res, double t_us) {
    if (!noiseless_ && res >= 0 && t_us > res_time_[res]) res_time_[res] = t_us;
  }

  // Classical frame update: no time, no noise.
  void pauli(int q, Pauli p) { engine_.inject(q, p); }

  // Bring qubits to a common time, charging idle error.
  void sync(std::span<const int> qs) {
    double t = 0.0;
    for (int q : qs) t = std::max(t, time_[q]);
    for (int q : qs) idle_to(q, t);
  }

  void sync_all() {
    std::vector<int> all(time_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    sync(all);
  }

 private:
  void begin(std::initializer_list<int> qs, int res, double duration_us) {
    ++ops_;
    if (noiseless_) return;
    double start = res >= 0 ? res_time_[res] : 0.0;
    for (int q : qs) start = std::max(start, time_[q]);
    for (int q : qs) {
      idle_to(q, start);
      time_[q] = start + duration_us;
    }
    if (res >= 0) res_time_[res] = start + duration_us;
  }

  void idle_to(int q, double t) {
    const double dt = t - time_[q];
    if (dt > 0.0) {
      if (!noiseless_ && noise_.memory_lifetime_s > 0.0 &&
          rng_.uniform() < dephasing_probability(dt * 1e-6, noise_.memory_lifetime_s))
        apply(q, Pauli::Z);
      time_[q] = t;
    }
  }

  void apply(int q, Pauli p) {
    engine_.inject(q, p);
    if (logging_) log_.push_back({ops_, q, p});
  }

  bool flip(double p) { return !noiseless_ && p > 0.0 && rng_.uniform() < p; }

  void fault1(int q, double p) {
    if (!flip(p)) return;
    if (noise_.channel == NoiseChannel::bitflip) {
      apply(q, Pauli::X);
      return;
    }
    apply(q, static_cast<Pauli>(1 + rng_.below(3)));
  }

  void fault2(int a, int b, double p) {
    if (!flip(p)) return;
    if (noise_.channel == NoiseChannel::bitflip) {
      const auto k = 1 + rng_.below(3);
      if (k & 1u) apply(a, Pauli::X);
      if (k & 2u) apply(b, Pauli::X);
      return;
    }
    const auto k = 1 + rng_.below(15);
    const auto pa = static_cast<Pauli>(k & 3u);
    const auto pb = static_cast<Pauli>(k >> 2);
    if (pa != Pauli::I) apply(a, pa);
    if (pb != Pauli::I) apply(b, pb);
  }

  Engine engine_;
  NoiseModel noise_;
  TechnologyParams timing_;
  Rng rng_;
  std::vector<double> time_;
  std::vector<double> res_time_;
  std::vector<InjectedError> log_;
  std::uint64_t ops_ = 0;
  bool noiseless_ = false;
  bool logging_ = false;
};

}  // namespace qla
