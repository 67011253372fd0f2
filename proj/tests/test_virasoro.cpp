#include <doctest.h>

#include "neqcft/virasoro.hpp"

using namespace neqcft;
using namespace neqcft::fock;
using namespace neqcft::virasoro;

namespace {

// <0| L_2 L_{-2} |0> from the matrices.
Rational two_point(Species species) {
  auto space = enumerate_basis(species, Rational(4));
  auto lm2 = build_virasoro(-2, space).realization;
  auto l2 = build_virasoro(2, space).realization;
  auto prod = l2 * lm2;
  return prod.entry(space->vacuum_index(), space->vacuum_index());
}

}  // namespace

TEST_CASE("central charges are 1/2 and 1") {
  CHECK(central_charge(Species::fermion) == Rational(1, 2));
  CHECK(central_charge(Species::boson) == 1);
}

TEST_CASE("stress tensor norm <T|T> equals c/2") {
  // L_{-2}|0> = b_{-3/2} b_{-1/2}|0> (norm 1/4) and (1/2) a_{-1}^2|0> (norm 1/2).
  CHECK(two_point(Species::fermion) == Rational(1, 4));
  CHECK(two_point(Species::boson) == Rational(1, 2));
}

TEST_CASE("L_{-2} on the vacuum has the expected single component") {
  auto space = enumerate_basis(Species::fermion, Rational(2));
  auto lm2 = build_virasoro(-2, space).realization;
  FockState pair(Species::fermion, {{0, -3}, {0, -1}});
  const auto& col = lm2.column(space->vacuum_index());
  REQUIRE(col.size() == 1);
  CHECK(col.begin()->first == *space->find(pair));
  CHECK(abs(col.begin()->second) == Rational(1, 2));
}

TEST_CASE("probes for m = 2, 3 both give the central charge") {
  for (auto species : {Species::fermion, Species::boson}) {
    auto rep = check_algebra(species, Rational(6), 3);
    REQUIRE(rep.probes.size() == 2);
    for (const auto& p : rep.probes) CHECK(p == central_charge(species));
    CHECK(rep.passed);
    CHECK(is_zero(rep.max_commutator_deviation));
    CHECK(is_zero(rep.max_hermiticity_deviation));
    CHECK(is_zero(rep.level_deviation));
  }
}

TEST_CASE("commutator law holds for each pair |m|, |n| <= 2 at cutoff 6") {
  for (auto species : {Species::fermion, Species::boson}) {
    auto space = enumerate_basis(species, Rational(6));
    for (int m = -2; m <= 2; ++m)
      for (int n = -2; n <= 2; ++n) {
        CAPTURE(m);
        CAPTURE(n);
        CHECK(is_zero(commutator_deviation(space, m, n)));
      }
  }
}

TEST_CASE("L_0 counts the level") {
  auto space = enumerate_basis(Species::boson, Rational(5));
  auto l0 = build_virasoro(0, space).realization;
  for (std::size_t i = 0; i < space->dimension(); ++i) CHECK(l0.entry(i, i) == space->state(i).level());
}

TEST_CASE("total Virasoro on two flavors has c = 1 for fermions") {
  auto space = make_space(Species::fermion, Rational(4),
                          {{Side::left, Chirality::anti_chiral}, {Side::right, Chirality::chiral}});
  auto l2 = total_virasoro(2, space);
  auto lm2 = total_virasoro(-2, space);
  auto prod = l2 * lm2;
  CHECK(prod.entry(space->vacuum_index(), space->vacuum_index()) == Rational(1, 2));
}

TEST_CASE("modes beyond the cutoff are rejected") {
  auto space = enumerate_basis(Species::fermion, Rational(2));
  CHECK_THROWS_AS(build_virasoro(3, space), std::invalid_argument);
  CHECK_THROWS_AS(check_algebra(Species::fermion, Rational(1), 2), std::invalid_argument);
}
