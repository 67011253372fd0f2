#pragma once

// Small exact computer-algebra layer: multivariate polynomials over an exact
// coefficient ring, a monomial rewrite system for side relations
// (i^2 = -1, cos^2 + sin^2 = 1, ...) and the field Q(k) of rational
// functions in one variable.

#include "neqcft/rational.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace neqcft::symbolic {

/// Univariate polynomial over Q; coefficient i multiplies k^i.
class UPoly {
 public:
  UPoly() = default;
  UPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  static UPoly variable();

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const Rational& leading() const { return c_.back(); }
  Rational coefficient(int power) const;
  Rational evaluate(const Rational& k) const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  /// Euclidean division; throws std::domain_error on division by zero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  /// Monic gcd (zero if both are zero).
  static UPoly gcd(UPoly a, UPoly b);

  std::string to_string(const std::string& var = "k") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Element of Q(k), kept with coprime numerator and monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(Rational(c)) {}                    // NOLINT(google-explicit-constructor)
  RatFunc(UPoly num, UPoly den);
  static RatFunc k() { return RatFunc(UPoly::variable(), UPoly(Rational(1))); }

  const UPoly& numerator() const { return num_; }
  const UPoly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// Throws std::domain_error if k is a pole.
  Rational evaluate(const Rational& k) const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const;

 private:
  void normalize();
  UPoly num_;
  UPoly den_;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline std::string to_string(const RatFunc& x) { return x.to_string(); }
using neqcft::is_zero;
using neqcft::to_string;

/// Variable name -> exponent (all exponents positive).
using Monomial = std::map<std::string, int>;

std::string monomial_string(const Monomial& m);
bool divides(const Monomial& d, const Monomial& m);
Monomial quotient(const Monomial& m, const Monomial& d);
Monomial product(const Monomial& a, const Monomial& b);

template <class C>
class Poly {
 public:
  Poly() = default;
  Poly(const C& constant) {  // NOLINT(google-explicit-constructor)
    if (!is_zero(constant)) terms_.emplace(Monomial{}, constant);
  }
  Poly(long constant) : Poly(C(constant)) {}  // NOLINT(google-explicit-constructor)

  static Poly variable(const std::string& name, int power = 1) {
    return term(power == 0 ? Monomial{} : Monomial{{name, power}}, C(1));
  }
  static Poly term(const Monomial& m, const C& coefficient) {
    Poly p;
    if (!is_zero(coefficient)) p.terms_.emplace(m, coefficient);
    return p;
  }

  const std::map<Monomial, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  C constant() const { return coefficient({}); }
  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }
  bool mentions(const std::string& var) const {
    for (const auto& [m, c] : terms_)
      if (m.count(var)) return true;
    return false;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add(m, C(-c));
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, C(-c));
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add(product(ma, mb), C(ca * cb));
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power of a polynomial");
    Poly out(C(1));
    for (int i = 0; i < n; ++i) out *= *this;
    return out;
  }

  Poly substitute(const std::string& var, const Poly& value) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      Monomial rest = m;
      int power = 0;
      if (auto it = rest.find(var); it != rest.end()) {
        power = it->second;
        rest.erase(it);
      }
      out += term(rest, c) * value.pow(power);
    }
    return out;
  }

  template <class F>
  auto map_coefficients(F f) const -> Poly<decltype(f(std::declval<const C&>()))> {
    Poly<decltype(f(std::declval<const C&>()))> out;
    for (const auto& [m, c] : terms_) out += Poly<decltype(f(c))>::term(m, f(c));
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      std::string cs = symbolic::to_string(c);
      bool compound = cs.find_first_of("+ ") != std::string::npos ||
                      (cs.find('-', 1) != std::string::npos);
      if (m.empty()) {
        os << (compound ? "(" + cs + ")" : cs);
      } else if (cs == "1") {
        os << monomial_string(m);
      } else if (cs == "-1") {
        os << "-" << monomial_string(m);
      } else {
        os << (compound ? "(" + cs + ")" : cs) << "*" << monomial_string(m);
      }
    }
    return os.str();
  }

 private:
  void add(const Monomial& m, const C& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (symbolic::is_zero(it->second)) terms_.erase(it);
    }
  }
  static bool is_zero(const C& c) { return symbolic::is_zero(c); }

  std::map<Monomial, C> terms_;
};

/// Monomial rewrite rules lhs -> rhs, applied until no left-hand side divides
/// any monomial. Every rule must strictly lower a well-founded measure (each
/// rule used here lowers the degree in some variable), so normalization stops.
template <class C>
class RewriteSystem {
 public:
  struct Rule {
    Monomial lhs;
    Poly<C> rhs;
  };

  RewriteSystem& add(Monomial lhs, Poly<C> rhs) {
    rules_.push_back({std::move(lhs), std::move(rhs)});
    return *this;
  }
  const std::vector<Rule>& rules() const { return rules_; }

  Poly<C> normalize(const Poly<C>& p) const {
    Poly<C> current = p;
    for (int guard = 0; guard < 10000; ++guard) {
      Poly<C> next;
      bool changed = false;
      for (const auto& [m, c] : current.terms()) {
        const Rule* hit = nullptr;
        for (const auto& r : rules_)
          if (divides(r.lhs, m)) {
            hit = &r;
            break;
          }
        if (!hit) {
          next += Poly<C>::term(m, c);
          continue;
        }
        changed = true;
        next += Poly<C>::term(quotient(m, hit->lhs), c) * hit->rhs;
      }
      if (!changed) return next;
      current = std::move(next);
    }
    throw std::logic_error("rewrite system did not terminate");
  }

  bool equal(const Poly<C>& a, const Poly<C>& b) const { return normalize(a - b).is_zero(); }

 private:
  std::vector<Rule> rules_;
};

using QPoly = Poly<Rational>;
using KPoly = Poly<RatFunc>;

/// Numeric value; every variable must be bound.
double evaluate(const QPoly& p, const std::map<std::string, double>& values);

/// Replaces k by a rational value in every coefficient.
QPoly specialize_k(const KPoly& p, const Rational& k);

/// Lifts a Q-polynomial into Q(k) coefficients.
KPoly lift(const QPoly& p);

}  // namespace neqcft::symbolic
