#pragma once

// su(2)_k current bilinears under a global rotation of the J^0 direction,
// decomposed on U(1)_k x Z_k, and the k = 2 cross-check through free
// Majorana fermions.
//
// Symbols: k (through Q(k) coefficients), s, r, rbar, rho = r rbar and
// sqrt2inv = 1/sqrt(2). Expectation values are written in pi, Tl, Tr.

#include "neqcft/ness.hpp"
#include "neqcft/rational.hpp"
#include "neqcft/symbolic.hpp"

#include <map>
#include <string>
#include <vector>

namespace neqcft::su2k {

using symbolic::KPoly;
using symbolic::QPoly;
using symbolic::RatFunc;
using KRules = symbolic::RewriteSystem<RatFunc>;

enum class Generator { J0, Jp, Jm };
using Word = std::vector<Generator>;

int charge(const Word& w);
std::string to_string(const Word& w);

/// r rbar -> rho and sqrt2inv^2 -> 1/2.
const KRules& rotation_rules();
/// rotation_rules plus s^2 -> 1 - rho.
const KRules& on_shell_rules();

/// s^2 + r rbar = 1 is built in: only rho = r rbar is stored and s^2 = 1 - rho.
/// beta enters charged words only.
struct RotationParams {
  int k = 2;
  Rational rho;
  double beta = 0;

  Rational s_squared() const { return 1 - rho; }
  /// Throws std::invalid_argument unless k >= 1 and 0 <= rho <= 1.
  void validate() const;
  static RotationParams from_s(int k, const Rational& s);
};

/// Coefficients on {J0J0, Jp Jm + Jm Jp, T_su2, T_u1, T_Zk}; words of nonzero
/// U(1) charge are kept apart in `charged`.
struct CurrentBilinear {
  KPoly j0j0;
  KPoly pair;
  KPoly t_su2;
  KPoly t_u1;
  KPoly t_zk;
  std::map<Word, KPoly> charged;

  /// True once only T_u1, T_Zk and charged words are left.
  bool closed() const;
  std::string to_string() const;
};

/// T_u1 = (1/k) J0 J0 with J0 -> s J0 + sqrt2inv (rbar Jp + r Jm), expanded and
/// rewritten down to T_u1, T_Zk and charged words. Throws std::logic_error if
/// the neutral words Jp Jm and Jm Jp do not come with equal weights.
CurrentBilinear rotate_u1_stress();

RatFunc central_charge_left();   // U(1): 1
RatFunc central_charge_right();  // Z_k parafermions: 2(k-1)/(k+2)

/// coeff(T_u1) c^l + coeff(T_Zk) c^r, normalized on shell.
KPoly unit_sum(const CurrentBilinear& b);

/// omega_0(S[T^l - Tbar^l]) with S[T^l] = T^l and S[Tbar^l] given by the
/// decomposition, <T> = (pi c / 12) T_side^2. Each charged word is assigned
/// `charged_expectation`, which is zero in any Gibbs state.
KPoly energy_current_k(const CurrentBilinear& b, const KPoly& charged_expectation = KPoly());

/// (pi/12) ((k-1)/k) rho (Tl^2 - Tr^2).
KPoly current_closed_form();

/// Numeric current at fixed parameters, from the symbolic result.
double energy_current_value(const RotationParams& p, double t_left, double t_right);

/// Fermionized k = 2 model: chi1, chi2 on the left, psi on the right, all
/// c = 1/2. chi1 is purely reflected; psi and chi2 mix with angle (cos, sin).
ness::Model fermionized_model(const QPoly& cos_alpha, const QPoly& sin_alpha);

/// Energy current of the fermionized model with cos^2 = rho, sin^2 = 1 - rho,
/// in the symbols pi, rho, Tl, Tr.
QPoly fermionized_current();

struct FermionizationCheck {
  Rational rho;
  QPoly fermionized;
  QPoly symbolic;  // energy_current_k specialized to k = 2
  bool agrees = false;
};

FermionizationCheck compare_k2(const Rational& rho);

}  // namespace neqcft::su2k
