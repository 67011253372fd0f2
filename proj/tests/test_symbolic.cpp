#include <doctest.h>

#include "neqcft/symbolic.hpp"

#include <cmath>

using namespace neqcft;
using namespace neqcft::symbolic;

TEST_CASE("polynomial arithmetic and substitution") {
  auto x = QPoly::variable("x");
  auto y = QPoly::variable("y");
  auto p = (x + y) * (x - y);
  CHECK(p == QPoly::variable("x", 2) - QPoly::variable("y", 2));
  CHECK(p.substitute("y", x) .is_zero());
  CHECK((x + 1).pow(3).coefficient({{"x", 1}}) == 3);
  CHECK_THROWS_AS(x.pow(-1), std::invalid_argument);
}

TEST_CASE("rewrite cos^2 -> 1 - sin^2 normalizes the unit circle") {
  RewriteSystem<Rational> rw;
  rw.add({{"cos", 2}}, QPoly(1) - QPoly::variable("sin", 2));
  auto c = QPoly::variable("cos");
  auto s = QPoly::variable("sin");
  CHECK(rw.normalize(c * c + s * s) == QPoly(1));
  CHECK(rw.equal(c.pow(4), (QPoly(1) - s * s).pow(2)));
  CHECK(rw.normalize(c.pow(3)) == c - c * s * s);
}

TEST_CASE("i^2 = -1 rewriting") {
  RewriteSystem<Rational> rw;
  rw.add({{"i", 2}}, QPoly(-1));
  auto i = QPoly::variable("i");
  CHECK(rw.normalize(i.pow(4)) == QPoly(1));
  CHECK(rw.normalize(i.pow(3)) == -i);
}

TEST_CASE("Q(k) arithmetic cancels common factors") {
  auto k = RatFunc::k();
  auto a = (k * k - RatFunc(1)) / (k - RatFunc(1));
  CHECK(a == k + RatFunc(1));
  CHECK((RatFunc(1) / k + RatFunc(1) / k) == RatFunc(2) / k);
  CHECK((k / k) == RatFunc(1));
  CHECK_THROWS_AS(RatFunc(1) / RatFunc(0), std::domain_error);
  CHECK_THROWS_AS((RatFunc(1) / k).evaluate(0), std::domain_error);
  CHECK(((k + RatFunc(2)) / (RatFunc(2) * k)).evaluate(4) == Rational(3, 4));
}

TEST_CASE("univariate gcd is monic") {
  auto k = UPoly::variable();
  auto a = (k - UPoly(Rational(1))) * (k + UPoly(Rational(2)));
  auto b = UPoly(Rational(3)) * (k - UPoly(Rational(1)));
  CHECK(UPoly::gcd(a, b) == k - UPoly(Rational(1)));
}

TEST_CASE("specialize_k and evaluate") {
  KPoly p = KPoly(RatFunc(1) / RatFunc::k()) * KPoly::variable("rho") + KPoly::variable("s", 2);
  QPoly at3 = specialize_k(p, 3);
  CHECK(at3 == QPoly(Rational(1, 3)) * QPoly::variable("rho") + QPoly::variable("s", 2));
  CHECK(evaluate(at3, {{"rho", 0.5}, {"s", 2.0}}) == doctest::Approx(0.5 / 3 + 4));
  CHECK_THROWS(evaluate(at3, {{"rho", 0.5}}));
  CHECK(lift(at3) == KPoly(RatFunc(Rational(1, 3))) * KPoly::variable("rho") + KPoly::variable("s", 2));
}
