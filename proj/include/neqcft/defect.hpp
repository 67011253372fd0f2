#pragma once

// Dual defect maps Theta: Vbar^l (x) V^r -> V^l (x) Vbar^r on truncated
// two-flavor fermion Fock spaces, and the algebraic checks they must pass.
//
// Both product spaces use the same flavor slots so that Theta is a square
// matrix: slot 0 holds the anti-chiral modes (bbar^l incoming, bbar^r
// outgoing) and slot 1 the chiral modes (b^r incoming, b^l outgoing).
// Theta is fixed by vacuum preservation plus its action on modes,
//   Theta (o_1 ... o_k |0>) = (Theta o_1 Theta^-1) ... (Theta o_k Theta^-1) |0>,
// so it is exact on every level of the truncated space.

#include "neqcft/fock.hpp"
#include "neqcft/graded_operator.hpp"
#include "neqcft/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace neqcft::defect {

using fock::GradedOperator;
using fock::SpacePtr;

/// A rotation angle, either an exact rational point (cos, sin) on the unit
/// circle or a floating-point value in radians.
class RotationAngle {
 public:
  static RotationAngle radians(double alpha);
  /// Throws std::invalid_argument unless cos^2 + sin^2 = 1.
  static RotationAngle exact(const Rational& cos, const Rational& sin);

  bool is_exact() const { return exact_.has_value(); }
  const Rational& cos_exact() const { return exact_->first; }
  const Rational& sin_exact() const { return exact_->second; }
  double cos() const;
  double sin() const;
  double value() const { return radians_; }

  RotationAngle operator-() const;
  friend RotationAngle operator+(const RotationAngle& a, const RotationAngle& b);

  std::string label() const;

 private:
  std::optional<std::pair<Rational, Rational>> exact_;
  double radians_ = 0;
};

/// Exact rational points used by the default grids.
inline constexpr std::array<std::array<long, 3>, 8> rational_grid{{
    {1, 0, 1}, {0, 1, 1}, {3, 4, 5}, {4, 3, 5}, {5, 12, 13}, {-3, 4, 5}, {8, 15, 17}, {-7, -24, 25}}};

/// Flavor-slot mode map: Theta b^(in slot a)_s Theta^-1 = sum_b M[a][b] b^(out slot b)_s.
template <class Scalar>
using FlavorMap = std::array<std::array<Scalar, 2>, 2>;

template <class Scalar>
struct BogoliubovSpec {
  Scalar cos_alpha;
  Scalar sin_alpha;

  /// [[cos, sin], [-sin, cos]] on the doublet (b^r_s, bbar^l_s) -> (b^l_s, bbar^r_s).
  std::array<std::array<Scalar, 2>, 2> mode_matrix() const {
    return {{{cos_alpha, sin_alpha}, {Scalar(-sin_alpha), cos_alpha}}};
  }
  FlavorMap<Scalar> flavor_map() const {
    return {{{cos_alpha, Scalar(-sin_alpha)}, {sin_alpha, cos_alpha}}};
  }
};

BogoliubovSpec<Rational> exact_spec(const RotationAngle& a);
BogoliubovSpec<double> float_spec(const RotationAngle& a);

template <class Scalar>
struct DefectRealization {
  GradedOperator<Scalar> theta;
  FlavorMap<Scalar> map;
  std::string source;
};

SpacePtr incoming_space(const Rational& cutoff);
SpacePtr outgoing_space(const Rational& cutoff);

template <class Scalar>
DefectRealization<Scalar> build_theta(const BogoliubovSpec<Scalar>& spec, const Rational& cutoff);

/// Theta from an arbitrary (possibly non-orthogonal) flavor map.
template <class Scalar>
DefectRealization<Scalar> build_theta_from_map(const FlavorMap<Scalar>& map, const Rational& cutoff,
                                               std::string source);

/// Theta + eps * (all-ones matrix on each level block): breaks every
/// automorphism property while staying level preserving.
template <class Scalar>
DefectRealization<Scalar> skewed(const DefectRealization<Scalar>& d, const Scalar& eps);

/// Zero (exact) or below 1e-12 (floating point).
template <class Scalar>
bool negligible(const Scalar& deviation);

/// Largest entry of Theta (Lbar^l_n + L^r_n) - (L^l_n + Lbar^r_n) Theta on
/// levels <= cutoff - |n|. Throws std::invalid_argument if that set is empty.
template <class Scalar>
Scalar intertwining_deviation(const DefectRealization<Scalar>& d, int n);

/// Largest |Theta(1 x 1) - 1 x 1| entry.
template <class Scalar>
Scalar vacuum_deviation(const DefectRealization<Scalar>& d);

template <class Scalar>
struct StressImage {
  Scalar to_Tl;          // coefficient of L^l_{-2}|0>
  Scalar to_Tbar_r;      // coefficient of Lbar^r_{-2}|0>
  Scalar remainder = 0;  // largest entry of what is left (mixed bilinears)
};

template <class Scalar>
struct MomentumReport {
  StressImage<Scalar> image_Tr;
  StressImage<Scalar> image_Tbar_l;
  Scalar deviation;  // |Theta(Lbar^l_{-2} + L^r_{-2})|0> - (L^l_{-2} + Lbar^r_{-2})|0>|
  bool holds = false;
};

template <class Scalar>
MomentumReport<Scalar> check_momentum_continuity(const DefectRealization<Scalar>& d);

/// {X_a, X_b} - {a, b} on levels <= cutoff - |s_a| - |s_b|, with
/// X = Theta b Theta^dagger. Theta^dagger equals Theta^-1 exactly when Theta
/// is a Fock-space automorphism.
template <class Scalar>
Scalar anticommutator_deviation(const DefectRealization<Scalar>& d, const fock::ModeIndex& a,
                                const fock::ModeIndex& b);

/// Maximum of the above over all incoming mode pairs with |s_a| + |s_b| <= cutoff.
template <class Scalar>
Scalar ope_deviation(const DefectRealization<Scalar>& d);

/// |Theta_a Theta_b - Theta_ab| with the outgoing space identified with the incoming one.
template <class Scalar>
Scalar composition_deviation(const DefectRealization<Scalar>& a, const DefectRealization<Scalar>& b,
                             const DefectRealization<Scalar>& ab);

/// |Theta^-1 - Theta_inverse_candidate|; throws std::domain_error if Theta is singular.
template <class Scalar>
Scalar inverse_deviation(const DefectRealization<Scalar>& d,
                         const DefectRealization<Scalar>& candidate);

/// Smallest |det| over the level blocks.
template <class Scalar>
Scalar min_block_determinant(const DefectRealization<Scalar>& d);

/// True iff states built only from bbar^l go to states built only from b^l, and
/// states built only from b^r go to states built only from bbar^r.
template <class Scalar>
bool reflection_factorizes(const DefectRealization<Scalar>& d);

}  // namespace neqcft::defect
