#include <doctest.h>

#include "neqcft/fusion.hpp"

#include <set>

using namespace neqcft;
using namespace neqcft::fusion;

namespace {

std::set<Rational> phases_of(const PhaseSolutions& sol, const std::string& label) {
  std::set<Rational> out;
  for (const auto& s : sol.solutions) out.insert(s.at(label).turns);
  return out;
}

}  // namespace

TEST_CASE("Ising psi carries a sign") {
  auto sol = solve_reflection_phases(ising_ring());
  CHECK(sol.consistent);
  CHECK(sol.solutions.size() == 2);
  CHECK(phases_of(sol, "psi") == std::set<Rational>{Rational(0), Rational(1, 2)});
  CHECK(phases_of(sol, "1") == std::set<Rational>{Rational(0)});
}

TEST_CASE("Z3 parafermion phases are cube roots of unity") {
  auto sol = solve_reflection_phases(z3_parafermion_ring());
  REQUIRE(sol.solutions.size() == 3);
  CHECK(phases_of(sol, "psi1") == std::set<Rational>{Rational(0), Rational(1, 3), Rational(2, 3)});
  for (const auto& s : sol.solutions) {
    // zeta_psi2 = conj(zeta_psi1)
    Rational sum = s.at("psi1").turns + s.at("psi2").turns;
    CHECK((sum == 0 || sum == 1));
    CHECK(s.at("1").turns == 0);
  }
}

TEST_CASE("every returned assignment satisfies the constraints") {
  for (const auto& ring : {ising_ring(), z3_parafermion_ring(), trivial_ring()})
    for (const auto& s : solve_reflection_phases(ring).solutions) CHECK(satisfies(ring, s));
}

TEST_CASE("violating assignments are detected") {
  auto ring = z3_parafermion_ring();
  PhaseAssignment bad{{"1", {0}}, {"psi1", {Rational(1, 3)}}, {"psi2", {Rational(1, 3)}}};
  CHECK_FALSE(satisfies(ring, bad));
  PhaseAssignment moved_identity{{"1", {Rational(1, 2)}}, {"psi1", {0}}, {"psi2", {0}}};
  CHECK_FALSE(satisfies(ring, moved_identity));
}

TEST_CASE("Z_4 simple currents give the fourth roots of unity") {
  auto ring = parse_ring(R"({"labels": ["0", "1", "2", "3"], "identity": "0",
    "fusion": [["1","1","2"], ["1","2","3"], ["1","3","0"], ["2","2","0"], ["2","3","1"], ["3","3","2"]],
    "conjugation": {"1": "3", "3": "1"}})");
  auto sol = solve_reflection_phases(ring, 12);
  CHECK(sol.solutions.size() == 4);
  CHECK(phases_of(sol, "1") == std::set<Rational>{Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)});
}

TEST_CASE("a non-abelian channel forces the trivial phase") {
  auto ring = parse_ring(R"({"labels": ["1", "tau"], "identity": "1",
    "fusion": [["tau","tau","1"], ["tau","tau","tau"]]})");
  auto sol = solve_reflection_phases(ring);
  REQUIRE(sol.solutions.size() == 1);
  CHECK(sol.solutions[0].at("tau").turns == 0);
}

TEST_CASE("the search bound limits the order") {
  auto sol = solve_reflection_phases(z3_parafermion_ring(), 2);
  CHECK(sol.solutions.size() == 1);
}

TEST_CASE("malformed rings are rejected") {
  CHECK_THROWS_AS(parse_ring("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ring(R"({"labels": ["1"], "identity": "x", "fusion": []})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_ring(R"({"labels": ["1", "a"], "identity": "1", "fusion": [["a","b","1"]]})"),
                  std::invalid_argument);
}

TEST_CASE("phase labels") {
  CHECK(Phase{0}.label() == "1");
  CHECK(Phase{Rational(1, 2)}.label() == "-1");
  CHECK(Phase{Rational(1, 3)}.label() == "exp(2 pi i 1/3)");
}
