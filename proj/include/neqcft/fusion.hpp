#pragma once

// Fusion-ring nonzero patterns and the reflection phases zeta_j of a purely
// reflecting defect: |zeta_j| = 1, zeta_identity = 1, zeta_conj(j) = conj(zeta_j)
// and zeta_j zeta_k = zeta_m whenever m appears in j x k.

#include "neqcft/rational.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace neqcft::fusion {

struct FusionRing {
  std::vector<std::string> labels;
  std::string identity;
  std::vector<std::array<std::string, 3>> fusion;  // (j, k, m) with C_jk^m != 0
  std::map<std::string, std::string> conjugation;  // j -> conj(j); missing entries are self-conjugate

  /// Validates labels and fills in the implied triples (j, conj j, identity),
  /// the commuted triples (k, j, m), and self-conjugation defaults.
  void normalize();
  const std::string& conjugate(const std::string& label) const;
};

/// Parses {"labels": [...], "identity": "...", "fusion": [[j,k,m],...], "conjugation": {...}}.
/// Throws std::invalid_argument on malformed input.
FusionRing parse_ring(const std::string& json_text);

FusionRing ising_ring();
FusionRing z3_parafermion_ring();
FusionRing trivial_ring();

/// The phase exp(2 pi i * turns), turns in [0, 1).
struct Phase {
  Rational turns;
  std::string label() const;  // "1", "-1", "exp(2 pi i 1/3)"
  bool operator==(const Phase&) const = default;
};

using PhaseAssignment = std::map<std::string, Phase>;

struct PhaseSolutions {
  bool consistent = false;  // at least one assignment exists
  int max_order = 0;
  std::vector<PhaseAssignment> solutions;
};

/// Exhaustive search over roots of unity of order <= max_order.
PhaseSolutions solve_reflection_phases(const FusionRing& ring, int max_order = 24);

/// Checks one assignment against every constraint.
bool satisfies(const FusionRing& ring, const PhaseAssignment& zeta);

}  // namespace neqcft::fusion
