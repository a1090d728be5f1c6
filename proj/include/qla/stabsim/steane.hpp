#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "qla/stabsim/executor.hpp"

namespace qla::steane {

using Bits7 = std::array<std::uint8_t, 7>;

// |0>_L encoder: H on the pivots, then three layers of disjoint CNOTs.
inline constexpr std::array<int, 3> kPivots{0, 1, 3};
inline constexpr std::array<std::array<std::array<int, 2>, 3>, 3> kEncoderLayers{{
    {{{0, 2}, {1, 5}, {3, 6}}},
    {{{0, 4}, {1, 6}, {3, 5}}},
    {{{0, 6}, {1, 2}, {3, 4}}},
}};

// Parity-check column of qubit i is the binary expansion of i + 1.
inline unsigned hamming_syndrome(const Bits7& b) {
  unsigned s = 0;
  for (unsigned i = 0; i < 7; ++i)
    if (b[i]) s ^= i + 1;
  return s;
}

inline bool parity7(const Bits7& b) {
  bool p = false;
  for (auto v : b) p ^= v != 0;
  return p;
}

// Logical value after correcting the single error the syndrome points at.
inline std::uint8_t decode_bit(const Bits7& b) {
  return static_cast<std::uint8_t>(parity7(b) ^ (hamming_syndrome(b) != 0));
}

struct Block {
  std::array<int, 7> q{};
};

struct Scratch {
  Block anc;
  Block ver;
  int res = -1;
};

struct L1Qubit {
  Block data;
  Scratch sx;  // X-error extraction
  Scratch sz;  // Z-error extraction
};

using L2Block = std::array<L1Qubit, 7>;

struct L2Scratch {
  L2Block anc;
  L2Block ver;
};

struct L2Qubit {
  L2Block data;
  L2Scratch sx;
  L2Scratch sz;
};

struct EcCounters {
  std::uint64_t l1_first = 0;
  std::uint64_t l1_nontrivial = 0;
  std::uint64_t l2_first = 0;
  std::uint64_t l2_nontrivial = 0;
  std::uint64_t prep_attempts = 0;
  std::uint64_t prep_rejects = 0;

  EcCounters& operator+=(const EcCounters& o) {
    l1_first += o.l1_first;
    l1_nontrivial += o.l1_nontrivial;
    l2_first += o.l2_first;
    l2_nontrivial += o.l2_nontrivial;
    prep_attempts += o.prep_attempts;
    prep_rejects += o.prep_rejects;
    return *this;
  }
};

struct ProtocolConfig {
  int hop_cells = 12;
  int hop_turns = 2;
  int max_prep_attempts = 3;
  int max_extractions = 3;
};

class QubitAllocator {
 public:
  int take() { return next_++; }
  Block block() {
    Block b;
    for (auto& q : b.q) q = take();
    return b;
  }
  int count() const { return next_; }

 private:
  int next_ = 0;
};

template <typename Ex>
Scratch make_scratch(QubitAllocator& a, Ex* ex) {
  Scratch s;
  s.anc = a.block();
  s.ver = a.block();
  s.res = ex ? ex->new_resource() : -1;
  return s;
}

template <typename Ex>
L1Qubit make_l1(QubitAllocator& a, Ex* ex) {
  L1Qubit u;
  u.data = a.block();
  u.sx = make_scratch(a, ex);
  u.sz = make_scratch(a, ex);
  return u;
}

template <typename Ex>
L2Block make_l2_block(QubitAllocator& a, Ex* ex) {
  L2Block b;
  for (auto& u : b) u = make_l1(a, ex);
  return b;
}

template <typename Ex>
L2Qubit make_l2(QubitAllocator& a, Ex* ex) {
  L2Qubit q;
  q.data = make_l2_block(a, ex);
  q.sx = {make_l2_block(a, ex), make_l2_block(a, ex)};
  q.sz = {make_l2_block(a, ex), make_l2_block(a, ex)};
  return q;
}

inline constexpr int kL1Qubits = 7 * 5;
inline constexpr int kL2Qubits = 7 * 5 * kL1Qubits;

// Level-1 protocol against an Executor<Engine>. Measurement values may be
// actual outcomes or flips; only Hamming syndromes and parities are used, and
// those agree for both.
template <typename Ex>
class Protocol {
 public:
  Protocol(Ex& ex, const ProtocolConfig& cfg, EcCounters& counters) : ex_(ex), cfg_(cfg), c_(counters) {
    const auto& t = ex.timing();
    const double slot = ballistic_latency_us(cfg.hop_cells, cfg.hop_turns, t) + t.cooling_us + t.double_gate_us;
    prep_us_ = 2 * t.single_gate_us + (2 * 9 + 7) * slot + t.measure_us;
  }

  // Ancilla preparation is started so that it completes when the data block
  // becomes free, instead of idling after an early start.
  void schedule_scratch(const Block& data, const Scratch& s, double extra_us) {
    double ready = 0.0;
    for (int q : data.q) ready = std::max(ready, ex_.time_us(q));
    const double start = ready - prep_us_ - extra_us;
    for (int j = 0; j < 7; ++j) {
      ex_.defer(s.anc.q[j], start);
      ex_.defer(s.ver.q[j], start);
    }
    ex_.defer_resource(s.res, start);
  }

  // Ballistic hop of `mover` to its partner, cooling, then the gate.
  void slot_cnot(int ctrl, int tgt, int mover, int res) {
    ex_.move(mover, cfg_.hop_cells, cfg_.hop_turns, res);
    ex_.cool(mover, res);
    ex_.cnot(ctrl, tgt, res);
  }

  void encode_zero(const Block& b, int res) {
    for (int p : kPivots) ex_.h(b.q[p]);
    for (const auto& layer : kEncoderLayers)
      for (const auto& [c, t] : layer) slot_cnot(b.q[c], b.q[t], b.q[c], res);
  }

  // Verified |0>_L in s.anc; X errors are copied into s.ver and rejected.
  void prep_zero(const Scratch& s) {
    for (int attempt = 0; attempt < cfg_.max_prep_attempts; ++attempt) {
      ++c_.prep_attempts;
      for (int j = 0; j < 7; ++j) {
        ex_.reset(s.anc.q[j]);
        ex_.reset(s.ver.q[j]);
      }
      encode_zero(s.anc, s.res);
      encode_zero(s.ver, s.res);
      for (int j = 0; j < 7; ++j) slot_cnot(s.anc.q[j], s.ver.q[j], s.ver.q[j], s.res);
      Bits7 b{};
      for (int j = 0; j < 7; ++j) b[j] = ex_.measure_z(s.ver.q[j]);
      if (hamming_syndrome(b) == 0 && !parity7(b)) return;
      ++c_.prep_rejects;
    }
  }

  unsigned extract_x(const Block& data, const Scratch& s) {
    schedule_scratch(data, s, ex_.timing().single_gate_us);
    prep_zero(s);
    for (int j = 0; j < 7; ++j) ex_.h(s.anc.q[j]);
    for (int j = 0; j < 7; ++j) slot_cnot(data.q[j], s.anc.q[j], s.anc.q[j], s.res);
    Bits7 b{};
    for (int j = 0; j < 7; ++j) b[j] = ex_.measure_z(s.anc.q[j]);
    return hamming_syndrome(b);
  }

  unsigned extract_z(const Block& data, const Scratch& s) {
    schedule_scratch(data, s, 0.0);
    prep_zero(s);
    for (int j = 0; j < 7; ++j) slot_cnot(s.anc.q[j], data.q[j], s.anc.q[j], s.res);
    Bits7 b{};
    for (int j = 0; j < 7; ++j) b[j] = ex_.measure_x(s.anc.q[j]);
    return hamming_syndrome(b);
  }

  // Repeat until two successive syndromes agree, capped; the last one wins.
  template <typename Extract>
  unsigned agreed_syndrome(Extract&& extract, std::uint64_t& first, std::uint64_t& nontrivial) {
    unsigned s = extract();
    ++first;
    if (s == 0) return 0;
    ++nontrivial;
    for (int k = 1; k < cfg_.max_extractions; ++k) {
      const unsigned next = extract();
      if (next == s) return s;
      s = next;
    }
    return s;
  }

  void ec_l1(const L1Qubit& u) {
    const unsigned sx = agreed_syndrome([&] { return extract_x(u.data, u.sx); }, c_.l1_first, c_.l1_nontrivial);
    if (sx) ex_.pauli(u.data.q[sx - 1], Pauli::X);
    const unsigned sz = agreed_syndrome([&] { return extract_z(u.data, u.sz); }, c_.l1_first, c_.l1_nontrivial);
    if (sz) ex_.pauli(u.data.q[sz - 1], Pauli::Z);
  }

  // Level-2 operations: transversal level-1 gates, each followed by level-1
  // correction of the blocks involved.
  void l2_h_block(const L1Qubit& u) {
    for (int q : u.data.q) ex_.h(q);
    ec_l1(u);
  }

  void l2_cnot_block(const L1Qubit& c, const L1Qubit& t) {
    for (int j = 0; j < 7; ++j) slot_cnot(c.data.q[j], t.data.q[j], c.data.q[j], -1);
    ec_l1(c);
    ec_l1(t);
  }

  void prep_zero_l1_block(const L1Qubit& u) {
    prep_zero(Scratch{u.data, u.sx.ver, u.sx.res});
  }

  void encode_zero_l2(const L2Block& b) {
    for (int p : kPivots) l2_h_block(b[p]);
    for (const auto& layer : kEncoderLayers)
      for (const auto& [c, t] : layer) l2_cnot_block(b[c], b[t]);
  }

  Bits7 decode_blocks_z(const L2Block& b) {
    Bits7 out{};
    for (int i = 0; i < 7; ++i) {
      Bits7 m{};
      for (int j = 0; j < 7; ++j) m[j] = ex_.measure_z(b[i].data.q[j]);
      out[i] = decode_bit(m);
    }
    return out;
  }

  Bits7 decode_blocks_x(const L2Block& b) {
    Bits7 out{};
    for (int i = 0; i < 7; ++i) {
      Bits7 m{};
      for (int j = 0; j < 7; ++j) m[j] = ex_.measure_x(b[i].data.q[j]);
      out[i] = decode_bit(m);
    }
    return out;
  }

  void prep_zero_l2(const L2Scratch& s) {
    for (int attempt = 0; attempt < cfg_.max_prep_attempts; ++attempt) {
      ++c_.prep_attempts;
      for (int i = 0; i < 7; ++i) {
        prep_zero_l1_block(s.anc[i]);
        prep_zero_l1_block(s.ver[i]);
      }
      encode_zero_l2(s.anc);
      encode_zero_l2(s.ver);
      for (int i = 0; i < 7; ++i) l2_cnot_block(s.anc[i], s.ver[i]);
      const Bits7 b = decode_blocks_z(s.ver);
      if (hamming_syndrome(b) == 0 && !parity7(b)) return;
      ++c_.prep_rejects;
    }
  }

  unsigned extract_x_l2(const L2Block& data, const L2Scratch& s) {
    prep_zero_l2(s);
    for (int i = 0; i < 7; ++i) l2_h_block(s.anc[i]);
    for (int i = 0; i < 7; ++i) l2_cnot_block(data[i], s.anc[i]);
    return hamming_syndrome(decode_blocks_z(s.anc));
  }

  unsigned extract_z_l2(const L2Block& data, const L2Scratch& s) {
    prep_zero_l2(s);
    for (int i = 0; i < 7; ++i) l2_cnot_block(s.anc[i], data[i]);
    return hamming_syndrome(decode_blocks_x(s.anc));
  }

  void ec_l2(const L2Qubit& q) {
    const unsigned sx =
        agreed_syndrome([&] { return extract_x_l2(q.data, q.sx); }, c_.l2_first, c_.l2_nontrivial);
    if (sx)
      for (int j : q.data[sx - 1].data.q) ex_.pauli(j, Pauli::X);
    const unsigned sz =
        agreed_syndrome([&] { return extract_z_l2(q.data, q.sz); }, c_.l2_first, c_.l2_nontrivial);
    if (sz)
      for (int j : q.data[sz - 1].data.q) ex_.pauli(j, Pauli::Z);
  }

 private:
  Ex& ex_;
  ProtocolConfig cfg_;
  EcCounters& c_;
  double prep_us_ = 0.0;
};

// Noiseless, timeless encoders used to set up the perfect initial codeword.
template <typename Ex>
void ideal_zero_l1(Ex& ex, const Block& b) {
  const bool prev = ex.noiseless();
  ex.set_noiseless(true);
  for (int q : b.q) ex.reset(q);
  for (int p : kPivots) ex.h(b.q[p]);
  for (const auto& layer : kEncoderLayers)
    for (const auto& [c, t] : layer) ex.cnot(b.q[c], b.q[t]);
  ex.set_noiseless(prev);
}

template <typename Ex>
void ideal_zero_l2(Ex& ex, const L2Block& b) {
  const bool prev = ex.noiseless();
  ex.set_noiseless(true);
  for (const auto& u : b) ideal_zero_l1(ex, u.data);
  for (int p : kPivots)
    for (int q : b[p].data.q) ex.h(q);
  for (const auto& layer : kEncoderLayers)
    for (const auto& [c, t] : layer)
      for (int j = 0; j < 7; ++j) ex.cnot(b[c].data.q[j], b[t].data.q[j]);
  ex.set_noiseless(prev);
}

}  // namespace qla::steane
