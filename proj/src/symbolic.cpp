#include "neqcft/symbolic.hpp"

#include <cmath>

namespace neqcft::symbolic {

UPoly::UPoly(const Rational& constant) {
  if (!neqcft::is_zero(constant)) c_.push_back(constant);
}

UPoly UPoly::variable() {
  UPoly p;
  p.c_ = {Rational(0), Rational(1)};
  return p;
}

void UPoly::trim() {
  while (!c_.empty() && neqcft::is_zero(c_.back())) c_.pop_back();
}

Rational UPoly::coefficient(int power) const {
  return power >= 0 && power < static_cast<int>(c_.size()) ? c_[power] : Rational(0);
}

Rational UPoly::evaluate(const Rational& k) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * k + *it;
  return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  UPoly out;
  out.c_.resize(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = a.coefficient(i) + b.coefficient(i);
  out.trim();
  return out;
}

UPoly UPoly::operator-() const {
  UPoly out = *this;
  for (auto& x : out.c_) x = -x;
  return out;
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  UPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  out.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
  out.trim();
  return out;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  UPoly q;
  UPoly r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    UPoly t;
    t.c_.assign(shift + 1, Rational(0));
    t.c_[shift] = r.leading() / b.leading();
    q = q + t;
    r = r - t * b;
  }
  return {q, r};
}

UPoly UPoly::gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  Rational lead = a.leading();
  for (auto& x : a.c_) x /= lead;
  return a;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& x = c_[i];
    if (neqcft::is_zero(x)) continue;
    Rational mag = abs(x);
    os << (sgn(x) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    if (i == 0 || mag != 1) os << neqcft::to_string(mag);
    if (i > 0) os << (i == 0 || mag != 1 ? "*" : "") << var << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

RatFunc::RatFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = UPoly(Rational(1));
    return;
  }
  UPoly g = UPoly::gcd(num_, den_);
  num_ = UPoly::divmod(num_, g).first;
  den_ = UPoly::divmod(den_, g).first;
  Rational lead = den_.leading();
  UPoly scale(Rational(1 / lead));
  num_ = num_ * scale;
  den_ = den_ * scale;
}

Rational RatFunc::evaluate(const Rational& k) const {
  Rational d = den_.evaluate(k);
  if (neqcft::is_zero(d)) throw std::domain_error("k = " + neqcft::to_string(k) + " is a pole");
  return num_.evaluate(k) / d;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("division by zero in Q(k)");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}
RatFunc RatFunc::operator-() const {
  RatFunc out = *this;
  out.num_ = -out.num_;
  return out;
}

std::string RatFunc::to_string() const {
  if (den_.degree() == 0) return num_.to_string();
  auto wrap = [](const std::string& t) { return t.find(' ') == std::string::npos ? t : "(" + t + ")"; };
  return wrap(num_.to_string()) + "/" + wrap(den_.to_string());
}

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m) {
    if (!out.empty()) out += "*";
    out += v;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool divides(const Monomial& d, const Monomial& m) {
  for (const auto& [v, e] : d) {
    auto it = m.find(v);
    if (it == m.end() || it->second < e) return false;
  }
  return true;
}

Monomial quotient(const Monomial& m, const Monomial& d) {
  Monomial out = m;
  for (const auto& [v, e] : d) {
    auto it = out.find(v);
    if (it == out.end() || it->second < e) throw std::logic_error("monomial does not divide");
    if ((it->second -= e) == 0) out.erase(it);
  }
  return out;
}

Monomial product(const Monomial& a, const Monomial& b) {
  Monomial out = a;
  for (const auto& [v, e] : b) out[v] += e;
  return out;
}

double evaluate(const QPoly& p, const std::map<std::string, double>& values) {
  double total = 0;
  for (const auto& [m, c] : p.terms()) {
    double term = c.get_d();
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) throw std::invalid_argument("unbound variable '" + v + "'");
      term *= std::pow(it->second, e);
    }
    total += term;
  }
  return total;
}

QPoly specialize_k(const KPoly& p, const Rational& k) {
  return p.map_coefficients([&](const RatFunc& c) { return c.evaluate(k); });
}

KPoly lift(const QPoly& p) {
  return p.map_coefficients([](const Rational& c) { return RatFunc(c); });
}

}  // namespace neqcft::symbolic
