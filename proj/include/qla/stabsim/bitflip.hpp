#pragma once

#include "qla/stabsim/circuit.hpp"

namespace qla {

// Three-qubit repetition code memory: encode |0>, one noisy identity per data
// qubit, noiseless parity extraction into two ancillas, majority correction,
// read qubit 0. Pair with NoiseChannel::bitflip and p_single = p.
inline CircuitIR bitflip_memory_circuit() {
  CircuitIR c(5);
  for (int q = 0; q < 5; ++q) c.reset(q, true);
  for (int q = 0; q < 3; ++q) c.gate(GateKind::I, q);
  c.gate(GateKind::CNOT, 0, 3, true).gate(GateKind::CNOT, 1, 3, true);
  c.gate(GateKind::CNOT, 1, 4, true).gate(GateKind::CNOT, 2, 4, true);
  const int s01 = c.measure(3, 'Z', true);
  const int s12 = c.measure(4, 'Z', true);
  ConditionalCorrection fix;
  fix.groups = {{s01}, {s12}};
  fix.table = {{}, {{0, Pauli::X}}, {{2, Pauli::X}}, {{1, Pauli::X}}};
  c.correct(fix);
  c.observable = {c.measure(0, 'Z', true)};
  return c;
}

inline NoiseModel bitflip_noise(double p) {
  NoiseModel n;
  n.channel = NoiseChannel::bitflip;
  n.p_single = p;
  return n;
}

}  // namespace qla
