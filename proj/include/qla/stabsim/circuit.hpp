#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qla/rng.hpp"
#include "qla/stabsim/executor.hpp"
#include "qla/stabsim/frame.hpp"
#include "qla/stabsim/tableau.hpp"

namespace qla {

enum class OpKind { gate, reset, move, cool, measure, conditional };

struct CircuitOp {
  OpKind kind = OpKind::gate;
  GateKind gate = GateKind::I;
  int a = -1;
  int b = -1;
  double cells = 0.0;
  int turns = 0;
  char basis = 'Z';
  bool noiseless = false;
  int conditional = -1;      // index into CircuitIR::conditionals
  int resource = -1;
};

// Syndrome bit k is the parity of the measurements listed in groups[k]; the
// syndrome value (bit k weighted 2^k) selects the correction from table.
struct ConditionalCorrection {
  std::vector<std::vector<int>> groups;
  std::vector<PauliString> table;
};

struct CircuitIR {
  int num_qubits = 0;
  int num_resources = 0;
  std::vector<CircuitOp> ops;
  std::vector<ConditionalCorrection> conditionals;
  std::vector<int> observable;  // measurement indices whose parity is the logical readout
  int num_measurements = 0;

  explicit CircuitIR(int n = 0) : num_qubits(n) {}

  CircuitIR& gate(GateKind g, int a, int b = -1, bool noiseless = false) {
    CircuitOp op;
    op.kind = OpKind::gate;
    op.gate = g;
    op.a = a;
    op.b = b;
    op.noiseless = noiseless;
    ops.push_back(op);
    return *this;
  }
  CircuitIR& reset(int q, bool noiseless = false) {
    CircuitOp op;
    op.kind = OpKind::reset;
    op.a = q;
    op.noiseless = noiseless;
    ops.push_back(op);
    return *this;
  }
  CircuitIR& move(int q, double cells, int turns) {
    CircuitOp op;
    op.kind = OpKind::move;
    op.a = q;
    op.cells = cells;
    op.turns = turns;
    ops.push_back(op);
    return *this;
  }
  CircuitIR& cool(int q) {
    CircuitOp op;
    op.kind = OpKind::cool;
    op.a = q;
    ops.push_back(op);
    return *this;
  }
  int measure(int q, char basis = 'Z', bool noiseless = false) {
    CircuitOp op;
    op.kind = OpKind::measure;
    op.a = q;
    op.basis = basis;
    op.noiseless = noiseless;
    ops.push_back(op);
    return num_measurements++;
  }
  CircuitIR& correct(ConditionalCorrection c) {
    CircuitOp op;
    op.kind = OpKind::conditional;
    op.conditional = static_cast<int>(conditionals.size());
    conditionals.push_back(std::move(c));
    ops.push_back(op);
    return *this;
  }

  void validate() const {
    if (num_qubits < 1) throw ValidationError("circuit has no qubits");
    auto in_range = [&](int q) { return q >= 0 && q < num_qubits; };
    int measured = 0;
    for (const auto& op : ops) {
      switch (op.kind) {
        case OpKind::gate:
          if (!in_range(op.a)) throw ValidationError("qubit index out of range");
          if (gate_arity(op.gate) == 2 && (!in_range(op.b) || op.a == op.b))
            throw ValidationError("two-qubit gate needs distinct in-range qubits");
          break;
        case OpKind::reset:
        case OpKind::cool:
          if (!in_range(op.a)) throw ValidationError("qubit index out of range");
          break;
        case OpKind::move:
          if (!in_range(op.a) || op.cells < 0 || op.turns < 0) throw ValidationError("malformed move");
          break;
        case OpKind::measure:
          if (!in_range(op.a) || (op.basis != 'Z' && op.basis != 'X'))
            throw ValidationError("malformed measurement");
          ++measured;
          break;
        case OpKind::conditional: {
          if (op.conditional < 0 || op.conditional >= static_cast<int>(conditionals.size()))
            throw ValidationError("conditional index out of range");
          const auto& c = conditionals[op.conditional];
          if (c.table.size() != (std::size_t{1} << c.groups.size()))
            throw ValidationError("conditional table size must be 2^groups");
          for (const auto& g : c.groups)
            for (int m : g)
              if (m < 0 || m >= measured) throw ValidationError("conditional reads a future measurement");
          for (const auto& ps : c.table)
            for (const auto& [q, p] : ps)
              if (!in_range(q)) throw ValidationError("correction qubit out of range");
          break;
        }
      }
    }
    for (int m : observable)
      if (m < 0 || m >= measured) throw ValidationError("observable index out of range");
  }
};

struct RunRecord {
  std::vector<std::uint8_t> outcomes;  // actual outcomes
  std::vector<InjectedError> errors;
  bool logical_failure = false;
};

namespace detail {

inline unsigned syndrome_of(const ConditionalCorrection& c, const std::vector<std::uint8_t>& m) {
  unsigned s = 0;
  for (std::size_t k = 0; k < c.groups.size(); ++k) {
    unsigned bit = 0;
    for (int i : c.groups[k]) bit ^= m[i];
    s |= bit << k;
  }
  return s;
}

inline bool parity_of(const std::vector<int>& idx, const std::vector<std::uint8_t>& m) {
  bool p = false;
  for (int i : idx) p ^= m[i] != 0;
  return p;
}

// Executes the circuit; `reference` holds the noiseless outcomes when the
// engine reports flips.
template <typename Engine>
std::vector<std::uint8_t> execute(const CircuitIR& c, Executor<Engine>& ex,
                                  const std::vector<std::uint8_t>* reference) {
  std::vector<std::uint8_t> out;
  out.reserve(c.num_measurements);
  for (const auto& op : c.ops) {
    const bool prev = ex.noiseless();
    if (op.noiseless) ex.set_noiseless(true);
    switch (op.kind) {
      case OpKind::gate: ex.gate(op.gate, op.a, op.b, op.resource); break;
      case OpKind::reset: ex.reset(op.a, op.resource); break;
      case OpKind::move: ex.move(op.a, op.cells, op.turns, op.resource); break;
      case OpKind::cool: ex.cool(op.a, op.resource); break;
      case OpKind::measure: {
        bool m = op.basis == 'Z' ? ex.measure_z(op.a, op.resource) : ex.measure_x(op.a, op.resource);
        if (reference) m ^= (*reference)[out.size()] != 0;
        out.push_back(m);
        break;
      }
      case OpKind::conditional: {
        const auto& cc = c.conditionals[op.conditional];
        for (const auto& [q, p] : cc.table[syndrome_of(cc, out)]) ex.pauli(q, p);
        if (reference)  // the reference run applied its own correction
          for (const auto& [q, p] : cc.table[syndrome_of(cc, *reference)]) ex.pauli(q, p);
        break;
      }
    }
    ex.set_noiseless(prev);
  }
  return out;
}

}  // namespace detail

// Noiseless outcomes; the logical readout of a valid circuit is deterministic.
inline std::vector<std::uint8_t> reference_outcomes(const CircuitIR& c, const TechnologyParams& timing,
                                                    std::uint64_t measure_seed) {
  Executor<TableauEngine> ex(c.num_qubits, NoiseModel::noiseless(), timing, 0, measure_seed);
  return detail::execute(c, ex, nullptr);
}

template <typename Engine>
RunRecord run_noisy(const CircuitIR& c, const NoiseModel& noise, std::uint64_t seed,
                    const std::vector<std::uint8_t>& reference, const TechnologyParams& timing = {},
                    bool log_errors = false) {
  const std::uint64_t measure_seed = derive_seed(seed, 0x6d656173ULL);
  Executor<Engine> ex(c.num_qubits, noise, timing, derive_seed(seed, 0x6e6f6973ULL), measure_seed);
  ex.enable_log(log_errors);
  RunRecord rec;
  if constexpr (Engine::reports_actual_outcomes) {
    rec.outcomes = detail::execute(c, ex, nullptr);
  } else {
    rec.outcomes = detail::execute(c, ex, &reference);
  }
  rec.errors = ex.error_log();
  rec.logical_failure = detail::parity_of(c.observable, rec.outcomes) != detail::parity_of(c.observable, reference);
  return rec;
}

template <typename Engine>
RunRecord run_noisy(const CircuitIR& c, const NoiseModel& noise, std::uint64_t seed,
                    const TechnologyParams& timing = {}, bool log_errors = false) {
  c.validate();
  const auto ref = reference_outcomes(c, timing, derive_seed(seed, 0x6d656173ULL));
  return run_noisy<Engine>(c, noise, seed, ref, timing, log_errors);
}

}  // namespace qla
