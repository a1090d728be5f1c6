#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qla/rng.hpp"
#include "qla/stabsim/pauli.hpp"

namespace qla {

// Aaronson-Gottesman tableau: rows [0, n) destabilizers, [n, 2n) stabilizers,
// row 2n scratch. Measurements report actual outcomes.
class TableauEngine {
 public:
  static constexpr bool reports_actual_outcomes = true;

  explicit TableauEngine(int n, std::uint64_t measure_seed = 0)
      : n_(n), words_((n + 63) / 64), x_((2 * n + 1) * words_), z_((2 * n + 1) * words_),
        r_(2 * n + 1), rng_(measure_seed) {
    if (n < 1) throw std::invalid_argument("tableau needs at least one qubit");
    for (int i = 0; i < n; ++i) {
      set(x_, i, i, true);
      set(z_, n + i, i, true);
    }
  }

  int num_qubits() const { return n_; }

  void h(int a) {
    check(a);
    for (int i = 0; i < 2 * n_; ++i) {
      const bool xa = get(x_, i, a), za = get(z_, i, a);
      r_[i] ^= xa & za;
      set(x_, i, a, za);
      set(z_, i, a, xa);
    }
  }

  void s(int a) {
    check(a);
    for (int i = 0; i < 2 * n_; ++i) {
      const bool xa = get(x_, i, a), za = get(z_, i, a);
      r_[i] ^= xa & za;
      set(z_, i, a, za ^ xa);
    }
  }

  void x(int a) {
    check(a);
    for (int i = 0; i < 2 * n_; ++i) r_[i] ^= get(z_, i, a);
  }

  void z(int a) {
    check(a);
    for (int i = 0; i < 2 * n_; ++i) r_[i] ^= get(x_, i, a);
  }

  void y(int a) {
    check(a);
    for (int i = 0; i < 2 * n_; ++i) r_[i] ^= get(x_, i, a) ^ get(z_, i, a);
  }

  void cnot(int a, int b) {
    check(a);
    check(b);
    if (a == b) throw std::invalid_argument("cnot needs distinct qubits");
    for (int i = 0; i < 2 * n_; ++i) {
      const bool xa = get(x_, i, a), za = get(z_, i, a);
      const bool xb = get(x_, i, b), zb = get(z_, i, b);
      r_[i] ^= xa & zb & (xb ^ za ^ 1);
      set(x_, i, b, xb ^ xa);
      set(z_, i, a, za ^ zb);
    }
  }

  void inject(int q, Pauli p) {
    if (has_x(p)) x(q);
    if (has_z(p)) z(q);
  }

  // Probability-1/2 outcomes draw from the engine's own stream.
  bool measure_z(int a) {
    check(a);
    int p = -1;
    for (int i = n_; i < 2 * n_; ++i)
      if (get(x_, i, a)) {
        p = i;
        break;
      }
    if (p >= 0) {
      for (int i = 0; i < 2 * n_; ++i)
        if (i != p && get(x_, i, a)) rowsum(i, p);
      copy_row(p - n_, p);
      clear_row(p);
      const bool outcome = (rng_.bits() >> 63) != 0;
      r_[p] = outcome;
      set(z_, p, a, true);
      last_random_ = true;
      return outcome;
    }
    const int s = 2 * n_;
    clear_row(s);
    for (int i = 0; i < n_; ++i)
      if (get(x_, i, a)) rowsum(s, i + n_);
    last_random_ = false;
    return r_[s] != 0;
  }

  bool measure_x(int a) {
    h(a);
    const bool m = measure_z(a);
    h(a);
    return m;
  }

  void reset(int a) {
    if (measure_z(a)) x(a);
  }

  bool last_measurement_random() const { return last_random_; }

  // Commutation structure of the generator set.
  bool check_symplectic() const {
    for (int i = 0; i < 2 * n_; ++i)
      for (int j = i + 1; j < 2 * n_; ++j) {
        const bool anti = anticommute(i, j);
        const bool want = (i < n_ && j == i + n_);
        if (anti != want) return false;
      }
    return true;
  }

  // Sign of stabilizer generator k (0-based), for tests.
  bool stabilizer_sign(int k) const { return r_[n_ + k] != 0; }

 private:
  bool get(const std::vector<std::uint64_t>& m, int row, int q) const {
    return (m[row * words_ + (q >> 6)] >> (q & 63)) & 1u;
  }
  void set(std::vector<std::uint64_t>& m, int row, int q, bool v) {
    auto& w = m[row * words_ + (q >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (q & 63);
    w = v ? (w | bit) : (w & ~bit);
  }
  void check(int q) const {
    if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  }
  void copy_row(int dst, int src) {
    for (int w = 0; w < words_; ++w) {
      x_[dst * words_ + w] = x_[src * words_ + w];
      z_[dst * words_ + w] = z_[src * words_ + w];
    }
    r_[dst] = r_[src];
  }
  void clear_row(int row) {
    for (int w = 0; w < words_; ++w) x_[row * words_ + w] = z_[row * words_ + w] = 0;
    r_[row] = 0;
  }
  bool anticommute(int i, int j) const {
    int c = 0;
    for (int w = 0; w < words_; ++w)
      c += std::popcount((x_[i * words_ + w] & z_[j * words_ + w]) ^ (z_[i * words_ + w] & x_[j * words_ + w]));
    return (c & 1) != 0;
  }
  // row h <- row i * row h, tracking the phase.
  void rowsum(int h, int i) {
    int acc = 2 * r_[h] + 2 * r_[i];
    for (int w = 0; w < words_; ++w) {
      const std::uint64_t x1 = x_[i * words_ + w], z1 = z_[i * words_ + w];
      const std::uint64_t x2 = x_[h * words_ + w], z2 = z_[h * words_ + w];
      const std::uint64_t plus = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & z2 & x2) | (~x1 & z1 & x2 & ~z2);
      const std::uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & z2 & ~x2) | (~x1 & z1 & x2 & z2);
      acc += std::popcount(plus) - std::popcount(minus);
      x_[h * words_ + w] = x1 ^ x2;
      z_[h * words_ + w] = z1 ^ z2;
    }
    r_[h] = ((acc % 4) + 4) % 4 == 2 ? 1 : 0;
  }

  int n_;
  int words_;
  std::vector<std::uint64_t> x_, z_;
  std::vector<std::uint8_t> r_;
  Rng rng_;
  bool last_random_ = false;
};

}  // namespace qla
