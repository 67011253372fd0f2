#include "neqcft/rational.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace neqcft {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_integer = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) return false;
    for (std::size_t i = start; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den))
    throw std::invalid_argument("not a rational number: '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Rational r{mpz_class(num), mpz_class(den)};
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::optional<Rational> sqrt_exact(const Rational& value) {
  if (sgn(value) < 0) return std::nullopt;
  mpz_class num = sqrt(value.get_num());
  mpz_class den = sqrt(value.get_den());
  if (num * num != value.get_num() || den * den != value.get_den()) return std::nullopt;
  return Rational(num, den);
}

std::string ScalarTraits<double>::to_string(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace neqcft
