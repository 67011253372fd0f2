#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace neqcft {

/// Exact rational number (GMP backed). Values are always kept canonical.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

/// Nonnegative rational square root when one exists.
std::optional<Rational> sqrt_exact(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

/// Uniform access to the two scalar types used by graded operators:
/// exact rationals for the algebraic checks and doubles for generic angles.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational magnitude(const Rational& x) { return Rational(abs(x)); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational from_rational(const Rational& x) { return x; }
  static std::string to_string(const Rational& x) { return neqcft::to_string(x); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double x) { return x == 0.0; }
  static double magnitude(double x) { return x < 0 ? -x : x; }
  static double to_double(double x) { return x; }
  static double from_rational(const Rational& x) { return x.get_d(); }
  static std::string to_string(double x);
};

}  // namespace neqcft
