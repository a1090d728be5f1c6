#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qla/stabsim/pauli.hpp"

namespace qla {

// Pauli frame relative to a noiseless reference run. Measurements report the
// flip of the outcome with respect to that reference.
class FrameEngine {
 public:
  static constexpr bool reports_actual_outcomes = false;

  explicit FrameEngine(int n, std::uint64_t = 0) : x_(n, 0), z_(n, 0) {
    if (n < 1) throw std::invalid_argument("frame needs at least one qubit");
  }

  int num_qubits() const { return static_cast<int>(x_.size()); }

  void h(int a) { std::swap(x_[a], z_[a]); }
  void s(int a) { z_[a] ^= x_[a]; }
  void x(int) {}
  void y(int) {}
  void z(int) {}
  void cnot(int a, int b) {
    if (a == b) throw std::invalid_argument("cnot needs distinct qubits");
    x_[b] ^= x_[a];
    z_[a] ^= z_[b];
  }
  void inject(int q, Pauli p) {
    x_[q] ^= has_x(p);
    z_[q] ^= has_z(p);
  }
  bool measure_z(int a) { return x_[a] != 0; }
  bool measure_x(int a) { return z_[a] != 0; }
  void reset(int a) { x_[a] = z_[a] = 0; }

  Pauli frame(int q) const { return make_pauli(x_[q] != 0, z_[q] != 0); }

 private:
  std::vector<std::uint8_t> x_, z_;
};

}  // namespace qla
