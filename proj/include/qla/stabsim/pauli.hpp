#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qla {

enum class Pauli : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };  // bit0 = x, bit1 = z

constexpr bool has_x(Pauli p) { return (static_cast<unsigned>(p) & 1u) != 0; }
constexpr bool has_z(Pauli p) { return (static_cast<unsigned>(p) & 2u) != 0; }
constexpr Pauli make_pauli(bool x, bool z) { return static_cast<Pauli>((x ? 1u : 0u) | (z ? 2u : 0u)); }
constexpr Pauli operator*(Pauli a, Pauli b) {
  return static_cast<Pauli>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}

inline char pauli_char(Pauli p) { return "IXZY"[static_cast<unsigned>(p)]; }

using PauliString = std::vector<std::pair<int, Pauli>>;

enum class GateKind { I, H, S, X, Y, Z, CNOT };

inline GateKind parse_gate(const std::string& s) {
  if (s == "I") return GateKind::I;
  if (s == "H") return GateKind::H;
  if (s == "S") return GateKind::S;
  if (s == "X") return GateKind::X;
  if (s == "Y") return GateKind::Y;
  if (s == "Z") return GateKind::Z;
  if (s == "CNOT" || s == "CX") return GateKind::CNOT;
  throw std::invalid_argument("unknown gate kind: " + s);
}

constexpr int gate_arity(GateKind g) { return g == GateKind::CNOT ? 2 : 1; }

}  // namespace qla
