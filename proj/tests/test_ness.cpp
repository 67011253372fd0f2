#include <doctest.h>

#include "neqcft/ness.hpp"

#include <cmath>
#include <numbers>

using namespace neqcft;
using namespace neqcft::ness;

namespace {

QPoly var(const std::string& n, int p = 1) { return QPoly::variable(n, p); }

const Position plus_x{1, 0};
const Position minus_x{-1, 0};

FieldExpression field(const LocalField& f) { return FieldExpression::of(f); }

double numeric_current(const Model& m, double alpha, double tl, double tr) {
  return symbolic::evaluate(energy_current(m), {{"pi", std::numbers::pi}, {"Tl", tl}, {"Tr", tr},
                                                {"cos", std::cos(alpha)}, {"sin", std::sin(alpha)}});
}

}  // namespace

TEST_CASE("S acts on the incoming fermion as sin psi^r(x) - cos psibar^l(-x)") {
  auto m = fermion_model();
  auto image = apply_smatrix(field(fermion("psi", Chirality::chiral, Side::right, plus_x)), m.theta, m.theta0);
  FieldExpression expected = var("sin") * field(fermion("psi", Chirality::chiral, Side::right, plus_x)) -
                             var("cos") * field(fermion("psi", Chirality::anti_chiral, Side::left, minus_x));
  CHECK(image.equals(expected));
}

TEST_CASE("S transmits T^r with weights cos^2 and sin^2 summing to one") {
  auto m = fermion_model();
  auto tr = stress("psi", Chirality::chiral, Side::right, plus_x);
  auto tbar = stress("psi", Chirality::anti_chiral, Side::left, minus_x);
  auto image = apply_smatrix(field(tr), m.theta, m.theta0);
  const QPoly refl = image.coefficient({tr});
  const QPoly trans = image.coefficient({tbar});
  CHECK(m.rewrite.equal(refl, var("sin", 2)));
  CHECK(m.rewrite.equal(trans, var("cos", 2)));
  CHECK(m.rewrite.equal(refl + trans, QPoly(1)));
}

TEST_CASE("S is the identity when Theta = Theta_0") {
  auto m = fermion_model(QPoly(0), QPoly(1));
  for (const auto& f : {fermion("psi", Chirality::chiral, Side::right, plus_x),
                        fermion("psi", Chirality::anti_chiral, Side::left, minus_x),
                        stress("psi", Chirality::chiral, Side::right, plus_x),
                        stress("psi", Chirality::anti_chiral, Side::left, minus_x)})
    CHECK(apply_smatrix(field(f), m.theta, m.theta0).equals(field(f)));
}

TEST_CASE("inverse rules undo Theta") {
  auto rules = symbolic_fermion_rules();
  auto inv = invert(rules);
  for (const auto& [key, images] : rules.images) {
    std::map<FieldKey, QPoly> composed;
    for (const auto& im : images)
      for (const auto& back : inv.images.at(im.field)) composed[back.field] += im.coefficient * back.coefficient;
    for (const auto& [k, c] : composed) CHECK(standard_rules().equal(c, QPoly(k == key ? 1 : 0)));
  }
  CHECK_THROWS_AS(invert(fermion_rules(QPoly(0), QPoly(0))), std::domain_error);
}

TEST_CASE("energy current equals (pi cos^2 / 24)(Tl^2 - Tr^2)") {
  auto m = fermion_model();
  QPoly expected = QPoly(Rational(1, 24)) * var("pi") * var("cos", 2) * (var("Tl", 2) - var("Tr", 2));
  CHECK(m.rewrite.equal(energy_current(m, Side::right), expected));
  CHECK(m.rewrite.equal(energy_current(m, Side::left), expected));
  CHECK(m.rewrite.equal(fermion_current_formula(var("cos")), expected));
}

TEST_CASE("current is antisymmetric in the temperatures") {
  auto m = fermion_model();
  QPoly j = energy_current(m);
  QPoly swapped = j.substitute("Tl", var("a")).substitute("Tr", var("Tl")).substitute("a", var("Tr"));
  CHECK(m.rewrite.equal(swapped, -j));
}

TEST_CASE("equal temperatures and pure reflection carry no current") {
  auto m = fermion_model();
  QPoly j = energy_current(m);
  CHECK(m.rewrite.normalize(j.substitute("Tr", var("Tl"))).is_zero());
  auto reflecting = fermion_model(QPoly(0), QPoly(1));
  CHECK(energy_current(reflecting).is_zero());
}

TEST_CASE("alpha = 0 gives the c = 1/2 value pi/24 at Tl = 1, Tr = 0") {
  auto m = fermion_model(QPoly(1), QPoly(0));
  QPoly j = energy_current(m);
  CHECK(j == QPoly(Rational(1, 24)) * var("pi") * (var("Tl", 2) - var("Tr", 2)));
  CHECK(numeric_current(fermion_model(), 0, 1, 0) == doctest::Approx(std::numbers::pi / 24).epsilon(1e-14));
}

TEST_CASE("Gibbs expectation of a stress tensor is pi c T^2 / 12") {
  auto m = fermion_model();
  auto e = expectation(field(stress("psi", Chirality::chiral, Side::left, minus_x)), m);
  CHECK(e == QPoly(Rational(1, 24)) * var("pi") * var("Tl", 2));
  CHECK(expectation(field(fermion("psi", Chirality::chiral, Side::left, minus_x)), m).is_zero());
}

TEST_CASE("global continuity holds in both regimes") {
  for (auto regime : {Regime::before_crossing, Regime::after_crossing}) {
    auto rep = check_global_continuity(fermion_model(), regime);
    CHECK(rep.holds);
    CHECK(rep.residual.is_zero());
  }
}

TEST_CASE("entropy production is nonnegative on a grid") {
  auto m = fermion_model();
  for (double alpha = 0; alpha <= 1.6; alpha += 0.2)
    for (double tl = 0.1; tl <= 2; tl += 0.3)
      for (double tr = 0.1; tr <= 2; tr += 0.3)
        CHECK(entropy_production(numeric_current(m, alpha, tl, tr), tl, tr) >= -1e-15);
  CHECK_THROWS_AS(entropy_production(1, 0, 1), std::invalid_argument);
}

TEST_CASE("asymmetric configurations and undetermined regimes are rejected") {
  CHECK(sign_in(Position{1, -1}, Regime::before_crossing) == 1);
  CHECK(sign_in(Position{1, -1}, Regime::after_crossing) == -1);
  CHECK_THROWS_AS(sign_in(Position{2, -1}, Regime::after_crossing), std::invalid_argument);
  CHECK(sign_in(Position{1, 1}, Regime::before_crossing) == 1);
  auto e = field(fermion("psi", Chirality::chiral, Side::right, Position{2, 0}));
  CHECK_THROWS_AS(evolve(e, symbolic_fermion_rules(), Regime::before_crossing), std::invalid_argument);
}

TEST_CASE("fermion products anticommute and square to zero") {
  auto a = field(fermion("psi", Chirality::chiral, Side::right, plus_x));
  auto b = field(fermion("psi", Chirality::anti_chiral, Side::left, minus_x));
  CHECK((a * b + b * a).is_zero());
  CHECK((a * a).is_zero());
}

TEST_CASE("stress tensors survive expansion and recollection") {
  auto t = field(stress("psi", Chirality::anti_chiral, Side::left, minus_x));
  CHECK(collect_stress(expand_stress(t)).equals(t));
}
