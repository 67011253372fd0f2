#include <doctest.h>

#include "neqcft/defect.hpp"

#include <cmath>

using namespace neqcft;
using namespace neqcft::defect;
using fock::FockState;
using fock::Species;

namespace {

// slot 0: anti-chiral modes, slot 1: chiral modes
constexpr int anti = 0;
constexpr int chiral = 1;

Rational entry(const DefectRealization<Rational>& d, const FockState& out, const FockState& in) {
  return d.theta.entry(*d.theta.codomain().find(out), *d.theta.domain().find(in));
}

std::vector<RotationAngle> exact_grid() {
  std::vector<RotationAngle> out;
  for (const auto& [c, s, den] : rational_grid) out.push_back(RotationAngle::exact(make_rational(c, den), make_rational(s, den)));
  return out;
}

}  // namespace

TEST_CASE("exact angles must lie on the unit circle") {
  CHECK_THROWS_AS(RotationAngle::exact(Rational(1, 2), Rational(1, 2)), std::invalid_argument);
  auto a = RotationAngle::exact(Rational(3, 5), Rational(4, 5));
  CHECK(a.is_exact());
  CHECK(a.value() == doctest::Approx(std::atan2(0.8, 0.6)));
}

TEST_CASE("angle addition on rational points stays exact") {
  auto a = RotationAngle::exact(Rational(3, 5), Rational(4, 5));
  auto b = RotationAngle::exact(Rational(4, 5), Rational(3, 5));
  auto sum = a + b;
  REQUIRE(sum.is_exact());
  CHECK(sum.cos_exact() == 0);
  CHECK(sum.sin_exact() == 1);
  CHECK((-a).sin_exact() == Rational(-4, 5));
}

TEST_CASE("one-particle states rotate with the mode matrix") {
  auto d = build_theta(exact_spec(RotationAngle::exact(Rational(3, 5), Rational(4, 5))), Rational(2));
  FockState br(Species::fermion, {{chiral, -1}});
  FockState bbar_l(Species::fermion, {{anti, -1}});
  // b^r -> c b^l + s bbar^r, bbar^l -> c bbar^r - s b^l
  CHECK(entry(d, br, br) == Rational(3, 5));
  CHECK(entry(d, bbar_l, br) == Rational(4, 5));
  CHECK(entry(d, bbar_l, bbar_l) == Rational(3, 5));
  CHECK(entry(d, br, bbar_l) == Rational(-4, 5));
}

TEST_CASE("two-particle states rotate as products of mode images") {
  const Rational c(3, 5), s(4, 5);
  auto d = build_theta(exact_spec(RotationAngle::exact(c, s)), Rational(2));
  FockState in(Species::fermion, {{chiral, -3}, {chiral, -1}});
  // (c X3 + s Y3)(c X1 + s Y1)|0>, X chiral (slot 1), Y anti-chiral (slot 0)
  CHECK(entry(d, in, in) == c * c);
  CHECK(entry(d, FockState(Species::fermion, {{anti, -3}, {anti, -1}}), in) == s * s);
  CHECK(entry(d, FockState(Species::fermion, {{anti, -3}, {chiral, -1}}), in) == c * s);
  CHECK(entry(d, FockState(Species::fermion, {{anti, -1}, {chiral, -3}}), in) == -c * s);
}

TEST_CASE("Theta intertwines the Virasoro actions on the exact grid") {
  for (const auto& a : exact_grid()) {
    auto d = build_theta(exact_spec(a), Rational(4));
    for (int n = -2; n <= 2; ++n) {
      CAPTURE(a.label());
      CAPTURE(n);
      CHECK(is_zero(intertwining_deviation(d, n)));
    }
  }
}

TEST_CASE("Theta intertwines to 1e-12 at generic angles") {
  for (double alpha : {0.1, 0.37, 1.2, 2.9, -0.8}) {
    auto d = build_theta(float_spec(RotationAngle::radians(alpha)), Rational(4));
    for (int n = -2; n <= 2; ++n) CHECK(intertwining_deviation(d, n) <= 1e-12);
  }
}

TEST_CASE("stress tensor images carry cos^2 and sin^2") {
  for (const auto& a : exact_grid()) {
    auto m = check_momentum_continuity(build_theta(exact_spec(a), Rational(2)));
    const Rational c2 = a.cos_exact() * a.cos_exact();
    const Rational s2 = a.sin_exact() * a.sin_exact();
    CHECK(m.holds);
    CHECK(is_zero(m.deviation));
    CHECK(m.image_Tr.to_Tl == c2);
    CHECK(m.image_Tr.to_Tbar_r == s2);
    CHECK(m.image_Tbar_l.to_Tl == s2);
    CHECK(m.image_Tbar_l.to_Tbar_r == c2);
  }
}

TEST_CASE("Theta is a Fock-space automorphism") {
  auto grid = exact_grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& a = grid[i];
    const auto& b = grid[(i + 3) % grid.size()];
    auto da = build_theta(exact_spec(a), Rational(3));
    auto db = build_theta(exact_spec(b), Rational(3));
    auto dab = build_theta(exact_spec(a + b), Rational(3));
    auto dinv = build_theta(exact_spec(-a), Rational(3));
    CHECK(is_zero(vacuum_deviation(da)));
    CHECK(is_zero(ope_deviation(da)));
    CHECK(is_zero(composition_deviation(da, db, dab)));
    CHECK(is_zero(inverse_deviation(da, dinv)));
    CHECK(abs(min_block_determinant(da)) == 1);
  }
}

TEST_CASE("skewed Theta fails every automorphism check") {
  auto a = RotationAngle::exact(Rational(5, 13), Rational(12, 13));
  auto b = RotationAngle::exact(Rational(3, 5), Rational(4, 5));
  const Rational eps(1, 100);
  auto sa = skewed(build_theta(exact_spec(a), Rational(3)), eps);
  auto sb = skewed(build_theta(exact_spec(b), Rational(3)), eps);
  auto sab = skewed(build_theta(exact_spec(a + b), Rational(3)), eps);
  CHECK_FALSE(is_zero(vacuum_deviation(sa)));
  CHECK_FALSE(is_zero(ope_deviation(sa)));
  CHECK_FALSE(is_zero(composition_deviation(sa, sb, sab)));
}

TEST_CASE("a non-orthogonal flavor map breaks the anticommutators") {
  FlavorMap<Rational> m{{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}}};
  auto d = build_theta_from_map(m, Rational(2), "shear");
  CHECK(is_zero(vacuum_deviation(d)));
  CHECK_FALSE(is_zero(ope_deviation(d)));
}

TEST_CASE("pure reflection factorizes and partial transmission does not") {
  CHECK(reflection_factorizes(build_theta(exact_spec(RotationAngle::exact(0, 1)), Rational(3))));
  CHECK_FALSE(reflection_factorizes(build_theta(exact_spec(RotationAngle::exact(Rational(3, 5), Rational(4, 5))), Rational(3))));
  CHECK_FALSE(reflection_factorizes(build_theta(exact_spec(RotationAngle::exact(1, 0)), Rational(3))));
}

TEST_CASE("floating Theta agrees with exact Theta at a rational point") {
  auto a = RotationAngle::exact(Rational(8, 17), Rational(15, 17));
  auto exact = build_theta(exact_spec(a), Rational(3));
  auto approx = build_theta(float_spec(RotationAngle::radians(a.value())), Rational(3));
  auto diff = exact.theta.convert<double>() - approx.theta;
  CHECK(diff.max_abs_on(exact.theta.domain().twice_cutoff()) <= 1e-12);
}

TEST_CASE("negligible means zero for rationals and 1e-12 for doubles") {
  CHECK(negligible(Rational(0)));
  CHECK_FALSE(negligible(Rational(1, 1000000000)));
  CHECK(negligible(5e-13));
  CHECK_FALSE(negligible(2e-12));
}
