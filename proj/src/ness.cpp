#include "neqcft/ness.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace neqcft::ness {

namespace {

QPoly var(const std::string& name, int power = 1) { return QPoly::variable(name, power); }
QPoly num(const Rational& r) { return QPoly(r); }

auto sort_key(const LocalField& f) {
  return std::make_tuple(f.position.x, f.position.t, f.side, f.chirality, f.species, f.kind,
                         -f.derivative);
}

bool same_point(const LocalField& a, const LocalField& b) {
  return a.position == b.position && a.side == b.side && a.chirality == b.chirality &&
         a.species == b.species;
}

// Sorts into canonical order; returns the fermionic sign, or nullopt if the product vanishes.
std::optional<int> canonicalize(std::vector<LocalField>& f) {
  int sign = 1;
  for (std::size_t i = 1; i < f.size(); ++i)
    for (std::size_t j = i; j > 0 && f[j] < f[j - 1]; --j) {
      if (f[j].is_fermion() && f[j - 1].is_fermion()) sign = -sign;
      std::swap(f[j], f[j - 1]);
    }
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i].is_fermion() && f[i] == f[i - 1]) return std::nullopt;
  return sign;
}

std::string side_tag(Side s) { return s == Side::left ? "l" : "r"; }

}  // namespace

const Rules& standard_rules() {
  static const Rules rules = [] {
    Rules r;
    r.add({{"i", 2}}, num(-1));
    r.add({{"cos", 2}}, num(1) - var("sin", 2));
    return r;
  }();
  return rules;
}

std::string Position::label() const {
  auto part = [](const Rational& c, const std::string& v, bool leading) {
    if (is_zero(c)) return std::string();
    std::string s;
    if (sgn(c) < 0) s = "-";
    else if (!leading) s = "+";
    Rational m = abs(c);
    if (m != 1) s += to_string(m) + "*";
    return s + v;
  };
  std::string out = part(x, "x", true);
  out += part(t, "t", out.empty());
  return out.empty() ? "0" : out;
}

int sign_in(const Position& p, Regime regime) {
  const int a = sgn(p.x);
  const int b = sgn(p.t);
  if (a == 0 && b == 0) throw std::invalid_argument("field placed exactly at the impurity");
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  // opposite signs: the dominant symbol wins when its coefficient is at least as large
  if (regime == Regime::after_crossing && abs(p.t) >= abs(p.x)) return b;
  if (regime == Regime::before_crossing && abs(p.x) >= abs(p.t)) return a;
  throw std::invalid_argument("sign of " + p.label() + " is not fixed by the regime");
}

std::string LocalField::label() const {
  std::string name;
  for (int i = 0; i < derivative; ++i) name += "d";
  name += kind == FieldKind::stress ? (species == "psi" ? "T" : "T[" + species + "]") : species;
  if (chirality == Chirality::anti_chiral) name += "bar";
  return name + "^" + side_tag(side) + "(" + position.label() + ")";
}

bool LocalField::operator==(const LocalField& o) const {
  return kind == o.kind && species == o.species && chirality == o.chirality && side == o.side &&
         derivative == o.derivative && position == o.position;
}

bool LocalField::operator<(const LocalField& o) const { return sort_key(*this) < sort_key(o); }

LocalField fermion(const std::string& species, Chirality chirality, Side side, Position position,
                   int derivative) {
  if (derivative < 0) throw std::invalid_argument("negative derivative order");
  return {FieldKind::fermion, species, chirality, side, derivative, std::move(position)};
}

LocalField stress(const std::string& species, Chirality chirality, Side side, Position position) {
  return {FieldKind::stress, species, chirality, side, 0, std::move(position)};
}

FieldExpression FieldExpression::identity() { return constant(num(1)); }

FieldExpression FieldExpression::constant(const QPoly& c) {
  FieldExpression e;
  e.add_product({}, c);
  return e;
}

FieldExpression FieldExpression::of(const LocalField& f) {
  FieldExpression e;
  e.add_product({f}, num(1));
  return e;
}

QPoly FieldExpression::coefficient(const Product& p) const {
  Product key = p;
  auto sign = canonicalize(key);
  if (!sign) return QPoly();
  auto it = terms_.find(key);
  return it == terms_.end() ? QPoly() : QPoly(*sign) * it->second;
}

void FieldExpression::add_product(Product factors, const QPoly& coefficient) {
  if (coefficient.is_zero()) return;
  auto sign = canonicalize(factors);
  if (!sign) return;
  QPoly term = *sign > 0 ? coefficient : -coefficient;
  auto [it, inserted] = terms_.try_emplace(std::move(factors), term);
  if (!inserted) {
    it->second += term;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FieldExpression& FieldExpression::operator+=(const FieldExpression& o) {
  for (const auto& [p, c] : o.terms_) add_product(p, c);
  return *this;
}

FieldExpression& FieldExpression::operator-=(const FieldExpression& o) {
  for (const auto& [p, c] : o.terms_) add_product(p, -c);
  return *this;
}

FieldExpression operator*(const FieldExpression& a, const FieldExpression& b) {
  FieldExpression out;
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) {
      FieldExpression::Product p = pa;
      p.insert(p.end(), pb.begin(), pb.end());
      out.add_product(std::move(p), ca * cb);
    }
  return out;
}

FieldExpression operator*(const QPoly& c, const FieldExpression& e) {
  FieldExpression out;
  for (const auto& [p, x] : e.terms_) out.add_product(p, c * x);
  return out;
}

FieldExpression FieldExpression::simplified(const Rules& rules) const {
  FieldExpression out;
  for (const auto& [p, c] : terms_) out.add_product(p, rules.normalize(c));
  return out;
}

bool FieldExpression::equals(const FieldExpression& o, const Rules& rules) const {
  return (*this - o).simplified(rules).is_zero();
}

std::string FieldExpression::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (const auto& f : p) os << " " << f.label();
  }
  return os.str();
}

namespace {

// Applies a per-factor substitution to every fermion factor, multiplying out the products.
FieldExpression map_factors(const FieldExpression& e,
                            const std::function<FieldExpression(const LocalField&)>& f) {
  FieldExpression out;
  for (const auto& [p, c] : e.terms()) {
    FieldExpression acc = FieldExpression::constant(c);
    for (const auto& factor : p) acc = acc * f(factor);
    out += acc;
  }
  return out;
}

FieldExpression bilinear(const LocalField& s) {
  const bool chiral = s.chirality == Chirality::chiral;
  QPoly c = num(Rational(chiral ? -1 : 1, 2)) * var("i");
  FieldExpression d = FieldExpression::of(fermion(s.species, s.chirality, s.side, s.position, 1));
  FieldExpression f = FieldExpression::of(fermion(s.species, s.chirality, s.side, s.position, 0));
  return c * (d * f);
}

Side outgoing_side(Chirality c) { return c == Chirality::chiral ? Side::left : Side::right; }

void require_symmetric(const LocalField& f) {
  if (!is_zero(f.position.t) || abs(f.position.x) != 1)
    throw std::invalid_argument("field " + f.label() +
                                " is not at +-x: only symmetric configurations are supported");
  const Side expected = sgn(f.position.x) > 0 ? Side::right : Side::left;
  if (f.side != expected)
    throw std::invalid_argument("field " + f.label() + " sits on the wrong side of the impurity");
}

// Relocated field with the chain-rule factor for its derivatives.
FieldExpression relocate(const LocalField& original, const QPoly& coefficient, const FieldKey& key,
                         Side side, const Position& to) {
  Rational ratio = to.x / original.position.x;
  Rational factor = 1;
  for (int i = 0; i < original.derivative; ++i) factor *= ratio;
  return (coefficient * num(factor)) *
         FieldExpression::of(fermion(key.species, key.chirality, side, to, original.derivative));
}

const std::vector<Image>& images_of(const DefectRules& rules, const LocalField& f) {
  auto it = rules.images.find({f.species, f.chirality});
  if (it == rules.images.end())
    throw std::invalid_argument("field " + f.label() + " has no image under " + rules.name);
  return it->second;
}

}  // namespace

FieldExpression expand_stress(const FieldExpression& e) {
  return map_factors(e, [](const LocalField& f) {
    return f.kind == FieldKind::stress ? bilinear(f) : FieldExpression::of(f);
  });
}

FieldExpression collect_stress(const FieldExpression& e) {
  FieldExpression out;
  for (const auto& [p, c] : e.terms()) {
    FieldExpression::Product next;
    QPoly coeff = c;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i + 1 < p.size() && p[i].is_fermion() && p[i + 1].is_fermion() && same_point(p[i], p[i + 1]) &&
          p[i].derivative == 1 && p[i + 1].derivative == 0) {
        const bool chiral = p[i].chirality == Chirality::chiral;
        coeff *= num(chiral ? 2 : -2) * var("i");
        next.push_back(stress(p[i].species, p[i].chirality, p[i].side, p[i].position));
        ++i;
      } else {
        next.push_back(p[i]);
      }
    }
    out.add_product(std::move(next), coeff);
  }
  return out;
}

DefectRules fermion_rules(const QPoly& c, const QPoly& s, const std::string& species) {
  DefectRules r;
  r.name = "Theta(cos=" + c.to_string() + ", sin=" + s.to_string() + ")";
  r.images[{species, Chirality::chiral}] = {{c, {species, Chirality::chiral}},
                                            {s, {species, Chirality::anti_chiral}}};
  r.images[{species, Chirality::anti_chiral}] = {{c, {species, Chirality::anti_chiral}},
                                                 {-s, {species, Chirality::chiral}}};
  return r;
}

DefectRules symbolic_fermion_rules() { return fermion_rules(var("cos"), var("sin")); }

namespace {

using Matrix = std::vector<std::vector<QPoly>>;

QPoly determinant(const Matrix& m, const Rules& rw) {
  const std::size_t n = m.size();
  if (n == 0) return num(1);
  if (n == 1) return m[0][0];
  QPoly det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<QPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    QPoly term = m[0][c] * determinant(minor, rw);
    det += c % 2 == 0 ? term : -term;
  }
  return rw.normalize(det);
}

}  // namespace

DefectRules invert(const DefectRules& rules, const Rules& rw) {
  std::vector<FieldKey> in;
  std::vector<FieldKey> out;
  for (const auto& [k, imgs] : rules.images) {
    in.push_back(k);
    for (const auto& img : imgs)
      if (std::find(out.begin(), out.end(), img.field) == out.end()) out.push_back(img.field);
  }
  std::sort(out.begin(), out.end());
  const std::size_t n = in.size();
  if (out.size() != n) throw std::domain_error(rules.name + " is not square, cannot invert");
  Matrix m(n, std::vector<QPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& img : rules.images.at(in[i])) {
      auto j = std::find(out.begin(), out.end(), img.field) - out.begin();
      m[i][j] += img.coefficient;
    }
  QPoly det = determinant(m, rw);
  if (!det.is_constant() || det.is_zero())
    throw std::domain_error("determinant of " + rules.name + " is " + det.to_string() +
                            ", not a nonzero constant");
  const Rational inv_det = 1 / det.constant();

  DefectRules result;
  result.name = "inverse of " + rules.name;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Image> imgs;
    for (std::size_t i = 0; i < n; ++i) {
      // (M^-1)[j][i] = (-1)^(i+j) minor(i, j) / det
      Matrix minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<QPoly> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      QPoly entry = rw.normalize(determinant(minor, rw) * num((i + j) % 2 == 0 ? inv_det : Rational(-inv_det)));
      if (!entry.is_zero()) imgs.push_back({entry, in[i]});
    }
    result.images[out[j]] = std::move(imgs);
  }
  return result;
}

const Sector& Model::sector(const std::string& species, Side side) const {
  for (const auto& s : sectors)
    if (s.species == species && s.side == side) return s;
  throw std::invalid_argument("no sector " + species + " on the " + fock::to_string(side) + " side");
}

Model fermion_model(const QPoly& c, const QPoly& s) {
  Model m;
  m.sectors = {{"psi", Side::left, Rational(1, 2)}, {"psi", Side::right, Rational(1, 2)}};
  m.theta = fermion_rules(c, s);
  m.theta0 = fermion_rules(num(0), num(1));
  return m;
}

Model fermion_model() { return fermion_model(var("cos"), var("sin")); }

FieldExpression evolve(const FieldExpression& e, const DefectRules& theta, Regime regime,
                       const Rules& rewrite) {
  const Position x_minus_t{1, -1};
  const Position t_minus_x{-1, 1};
  auto step = [&](const LocalField& f) -> FieldExpression {
    require_symmetric(f);
    const FieldKey key{f.species, f.chirality};
    const bool chiral = f.chirality == Chirality::chiral;
    const bool right = f.side == Side::right;
    // chiral fields on the left and anti-chiral fields on the right move away from the impurity
    if (chiral && !right) return relocate(f, num(1), key, Side::left, {-1, -1});
    if (!chiral && right) return relocate(f, num(1), key, Side::right, {1, 1});
    if (regime == Regime::before_crossing)
      return relocate(f, num(1), key, f.side, chiral ? x_minus_t : t_minus_x);
    FieldExpression out;
    for (const auto& img : images_of(theta, f)) {
      const bool out_chiral = img.field.chirality == Chirality::chiral;
      out += relocate(f, img.coefficient, img.field, outgoing_side(img.field.chirality),
                      out_chiral ? x_minus_t : t_minus_x);
    }
    return out;
  };
  return collect_stress(map_factors(expand_stress(e), step)).simplified(rewrite);
}

FieldExpression apply_smatrix(const FieldExpression& e, const DefectRules& theta,
                              const DefectRules& theta0, const Rules& rewrite) {
  const DefectRules back = invert(theta0, rewrite);
  auto step = [&](const LocalField& f) -> FieldExpression {
    const bool chiral = f.chirality == Chirality::chiral;
    if (!is_zero(f.position.t) || is_zero(f.position.x))
      throw std::invalid_argument("S acts on fields at t = 0 away from the impurity, got " + f.label());
    const bool positive = sgn(f.position.x) > 0;
    if (chiral != positive) return FieldExpression::of(f);
    if ((f.side == Side::right) != positive)
      throw std::invalid_argument("field " + f.label() + " sits on the wrong side of the impurity");
    const Rational magnitude = abs(f.position.x);
    // S = Theta_0^-1 Theta: incoming field -> incoming fields, then relocated
    std::map<FieldKey, QPoly> combined;
    for (const auto& img : images_of(theta, f)) {
      auto it = back.images.find(img.field);
      if (it == back.images.end())
        throw std::invalid_argument("Theta_0 has no preimage for " + img.field.species);
      for (const auto& pre : it->second) combined[pre.field] += img.coefficient * pre.coefficient;
    }
    FieldExpression out;
    for (const auto& [key, coeff] : combined) {
      const bool out_chiral = key.chirality == Chirality::chiral;
      out += relocate(f, coeff, key, out_chiral ? Side::right : Side::left,
                      {out_chiral ? magnitude : Rational(-magnitude), 0});
    }
    return out;
  };
  return collect_stress(map_factors(expand_stress(e), step)).simplified(rewrite);
}

QPoly expectation(const FieldExpression& e, const Model& model) {
  QPoly total;
  for (const auto& [p, c] : e.terms()) {
    std::map<std::tuple<Side, Chirality, std::string>, int> groups;
    const LocalField* stress_field = nullptr;
    int stresses = 0;
    for (const auto& f : p) {
      if (f.is_fermion()) ++groups[{f.side, f.chirality, f.species}];
      else {
        stress_field = &f;
        ++stresses;
      }
    }
    bool odd = false;
    for (const auto& [g, n] : groups) odd = odd || n % 2 == 1;
    if (odd) continue;  // Gaussian state: an odd number of fermions of one sector averages to zero
    if (!groups.empty())
      throw std::invalid_argument("expectation of fermion products at distinct points is not supported");
    if (stresses > 1)
      throw std::invalid_argument("expectation of products of stress tensors is not supported");
    if (stresses == 0) {
      total += c;
      continue;
    }
    const Sector& s = model.sector(stress_field->species, stress_field->side);
    const std::string temp = stress_field->side == Side::left ? "Tl" : "Tr";
    total += c * num(s.central_charge / 12) * var("pi") * var(temp, 2);
  }
  return model.rewrite.normalize(total);
}

FieldExpression momentum_density(const Model& model, Side side, const Position& at) {
  FieldExpression out;
  for (const auto& s : model.sectors) {
    if (s.side != side) continue;
    out += FieldExpression::of(stress(s.species, Chirality::chiral, side, at));
    out -= FieldExpression::of(stress(s.species, Chirality::anti_chiral, side, at));
  }
  return out;
}

QPoly energy_current(const Model& model, Side side) {
  const Position at{side == Side::right ? 1 : -1, 0};
  auto s = apply_smatrix(momentum_density(model, side, at), model.theta, model.theta0, model.rewrite);
  return expectation(s, model);
}

QPoly fermion_current_formula(const QPoly& cos_alpha) {
  return standard_rules().normalize(num(Rational(1, 24)) * var("pi") * cos_alpha * cos_alpha *
                                    (var("Tl", 2) - var("Tr", 2)));
}

double entropy_production(double current, double t_left, double t_right) {
  if (!(t_left > 0) || !(t_right > 0)) throw std::invalid_argument("temperatures must be positive");
  return (1 / t_right - 1 / t_left) * current;
}

ContinuityReport check_global_continuity(const Model& model, Regime regime) {
  ContinuityReport r;
  r.regime = regime;
  FieldExpression in;
  for (const auto& s : model.sectors) {
    if (s.side == Side::right) in += FieldExpression::of(stress(s.species, Chirality::chiral, Side::right, {1, 0}));
    else in += FieldExpression::of(stress(s.species, Chirality::anti_chiral, Side::left, {-1, 0}));
  }
  r.lhs = evolve(in, model.theta, regime, model.rewrite);

  const Position chiral_at{1, -1};
  const Position anti_at{-1, 1};
  const Side chiral_side = sign_in(chiral_at, regime) > 0 ? Side::right : Side::left;
  const Side anti_side = sign_in(anti_at, regime) > 0 ? Side::right : Side::left;
  for (const auto& s : model.sectors) {
    if (s.side == chiral_side)
      r.rhs += FieldExpression::of(stress(s.species, Chirality::chiral, chiral_side, chiral_at));
    if (s.side == anti_side)
      r.rhs += FieldExpression::of(stress(s.species, Chirality::anti_chiral, anti_side, anti_at));
  }
  r.residual = (r.lhs - r.rhs).simplified(model.rewrite);
  r.holds = r.residual.is_zero();
  return r;
}

}  // namespace neqcft::ness
