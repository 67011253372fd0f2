#pragma once

// Virasoro generators realized as graded operators on truncated Fock spaces.
//
// Fermion (c = 1/2):  L_n = 1/2 sum_m m :b_{n-m+1/2} b_{m-1/2}:
// Boson   (c = 1):    L_n = 1/2 sum_{m != 0, n} :a_{n-m} a_m:
// Normal ordering moves positive (annihilation) modes to the right.

#include "neqcft/fock.hpp"
#include "neqcft/graded_operator.hpp"
#include "neqcft/rational.hpp"

#include <vector>

namespace neqcft::virasoro {

using fock::GradedOperator;
using fock::SpacePtr;
using fock::Species;

Rational central_charge(Species model);

struct VirasoroGenerator {
  int n = 0;
  Species model = Species::fermion;
  GradedOperator<Rational> realization;
};

/// L_n acting on the modes of one flavor of the space (all other flavors are
/// spectators). Throws std::invalid_argument if |n| exceeds the cutoff.
VirasoroGenerator build_virasoro(int n, const SpacePtr& space, int flavor = 0);

/// Sum of L_n over every flavor of the space (the diagonal Virasoro action
/// on a tensor product).
GradedOperator<Rational> total_virasoro(int n, const SpacePtr& space);

/// 12 <0|[L_m, L_{-m}]|0> / (m^3 - m); requires m >= 2 and cutoff >= m.
Rational central_charge_probe(Species model, int m, const Rational& cutoff);

/// Largest entry of [L_m, L_n] - (m-n) L_{m+n} - c/12 (m^3-m) delta_{m+n,0}
/// on the safe subspace (level <= cutoff - |m| - |n|).
Rational commutator_deviation(const SpacePtr& space, int m, int n);

/// Largest deviation of G L_n = (L_{-n})^T G (G the basis Gram matrix) on the
/// safe subspace; zero means L_n^dagger = L_{-n}.
Rational hermiticity_deviation(const SpacePtr& space, int n);

/// Largest deviation of L_0 from the diagonal operator "level".
Rational level_operator_deviation(const SpacePtr& space);

struct AlgebraReport {
  Species model;
  Rational cutoff;
  std::vector<Rational> probes;  // central charge probe for m = 2..max_mode
  Rational central_charge;       // from m = 2
  Rational max_commutator_deviation;
  Rational max_hermiticity_deviation;
  Rational level_deviation;
  bool passed = false;
};

/// Full commutator law for |m|, |n| <= max_mode plus the probes above.
AlgebraReport check_algebra(Species model, const Rational& cutoff, int max_mode = 2);

}  // namespace neqcft::virasoro
