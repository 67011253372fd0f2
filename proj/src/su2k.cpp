#include "neqcft/su2k.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace neqcft::su2k {

namespace {

KPoly kvar(const std::string& name, int power = 1) { return KPoly::variable(name, power); }
KPoly kconst(const RatFunc& c) { return KPoly(c); }
QPoly qvar(const std::string& name, int power = 1) { return QPoly::variable(name, power); }

const RatFunc& k() {
  static const RatFunc value = RatFunc::k();
  return value;
}

// Expands a product of generator sums into words.
std::map<Word, KPoly> multiply(const std::map<Word, KPoly>& a, const std::map<Word, KPoly>& b) {
  std::map<Word, KPoly> out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out[w] += ca * cb;
    }
  return out;
}

}  // namespace

int charge(const Word& w) {
  int q = 0;
  for (auto g : w) q += g == Generator::Jp ? 1 : g == Generator::Jm ? -1 : 0;
  return q;
}

std::string to_string(const Word& w) {
  std::string out;
  for (auto g : w) {
    if (!out.empty()) out += " ";
    out += g == Generator::J0 ? "J0" : g == Generator::Jp ? "J+" : "J-";
  }
  return out;
}

const KRules& rotation_rules() {
  static const KRules rules = [] {
    KRules r;
    r.add({{"r", 1}, {"rbar", 1}}, kvar("rho"));
    r.add({{"sqrt2inv", 2}}, kconst(RatFunc(Rational(1, 2))));
    return r;
  }();
  return rules;
}

const KRules& on_shell_rules() {
  static const KRules rules = [] {
    KRules r = rotation_rules();
    r.add({{"s", 2}}, KPoly(1) - kvar("rho"));
    return r;
  }();
  return rules;
}

void RotationParams::validate() const {
  if (k < 1) throw std::invalid_argument("level k must be a positive integer");
  if (rho < 0 || rho > 1) throw std::invalid_argument("r rbar must lie in [0, 1]");
}

RotationParams RotationParams::from_s(int level, const Rational& s) {
  RotationParams p;
  p.k = level;
  p.rho = 1 - s * s;
  p.validate();
  return p;
}

bool CurrentBilinear::closed() const { return j0j0.is_zero() && pair.is_zero() && t_su2.is_zero(); }

std::string CurrentBilinear::to_string() const {
  std::ostringstream os;
  auto put = [&](const std::string& name, const KPoly& c) {
    if (!c.is_zero()) os << "[" << c.to_string() << "] " << name << "\n";
  };
  put("J0 J0", j0j0);
  put("(J+ J- + J- J+)", pair);
  put("T_su2", t_su2);
  put("T_u1", t_u1);
  put("T_Zk", t_zk);
  for (const auto& [w, c] : charged) put(su2k::to_string(w) + "  (charge " + std::to_string(charge(w)) + ")", c);
  return os.str();
}

CurrentBilinear rotate_u1_stress() {
  const auto& rw = rotation_rules();
  std::map<Word, KPoly> j0{{{Generator::J0}, kvar("s")},
                           {{Generator::Jp}, kvar("sqrt2inv") * kvar("rbar")},
                           {{Generator::Jm}, kvar("sqrt2inv") * kvar("r")}};
  auto square = multiply(j0, j0);

  CurrentBilinear b;
  const KPoly inv_k = kconst(RatFunc(1) / k());
  KPoly pm;
  KPoly mp;
  for (auto& [w, c] : square) {
    KPoly coeff = rw.normalize(inv_k * c);
    if (coeff.is_zero()) continue;
    if (charge(w) != 0) b.charged[w] += coeff;
    else if (w == Word{Generator::J0, Generator::J0}) b.j0j0 += coeff;
    else if (w == Word{Generator::Jp, Generator::Jm}) pm += coeff;
    else mp += coeff;
  }
  if (!rw.equal(pm, mp))
    throw std::logic_error("J+ J- and J- J+ carry different weights: " + pm.to_string() + " vs " + mp.to_string());
  b.pair = pm;

  // J+J- + J-J+ -> (k+2) T_su2 - J0 J0
  b.t_su2 += kconst(k() + RatFunc(2)) * b.pair;
  b.j0j0 -= b.pair;
  b.pair = KPoly();
  // J0 J0 -> k T_u1
  b.t_u1 += kconst(k()) * b.j0j0;
  b.j0j0 = KPoly();
  // T_su2 -> T_u1 + T_Zk
  b.t_u1 += b.t_su2;
  b.t_zk += b.t_su2;
  b.t_su2 = KPoly();

  b.t_u1 = rw.normalize(b.t_u1);
  b.t_zk = rw.normalize(b.t_zk);
  return b;
}

RatFunc central_charge_left() { return RatFunc(1); }

RatFunc central_charge_right() { return RatFunc(2) * (k() - RatFunc(1)) / (k() + RatFunc(2)); }

KPoly unit_sum(const CurrentBilinear& b) {
  return on_shell_rules().normalize(b.t_u1 * kconst(central_charge_left()) +
                                    b.t_zk * kconst(central_charge_right()));
}

KPoly energy_current_k(const CurrentBilinear& b, const KPoly& charged_expectation) {
  if (!b.closed()) throw std::invalid_argument("bilinear still contains J0 J0, J+J- or T_su2 terms");
  const KPoly pi12 = kconst(RatFunc(Rational(1, 12))) * kvar("pi");
  const KPoly tl = kvar("Tl", 2);
  const KPoly tr = kvar("Tr", 2);
  KPoly omega_tl = pi12 * kconst(central_charge_left()) * tl;
  KPoly omega_tbar_l = omega_tl;
  KPoly omega_tr = pi12 * kconst(central_charge_right()) * tr;
  KPoly s_tbar = b.t_u1 * omega_tbar_l + b.t_zk * omega_tr;
  for (const auto& [w, c] : b.charged) s_tbar += c * charged_expectation;
  return on_shell_rules().normalize(omega_tl - s_tbar);
}

KPoly current_closed_form() {
  return on_shell_rules().normalize(kconst(RatFunc(Rational(1, 12))) * kvar("pi") *
                                    kconst((k() - RatFunc(1)) / k()) * kvar("rho") *
                                    (kvar("Tl", 2) - kvar("Tr", 2)));
}

double energy_current_value(const RotationParams& p, double t_left, double t_right) {
  p.validate();
  static const KPoly current = energy_current_k(rotate_u1_stress());
  QPoly at_k = symbolic::specialize_k(current, Rational(p.k));
  return symbolic::evaluate(at_k, {{"pi", std::numbers::pi}, {"rho", p.rho.get_d()}, {"Tl", t_left}, {"Tr", t_right}});
}

ness::Model fermionized_model(const QPoly& c, const QPoly& s) {
  using ness::Chirality;
  using ness::FieldKey;
  using ness::Side;
  ness::Model m;
  m.sectors = {{"chi1", Side::left, Rational(1, 2)},
               {"chi2", Side::left, Rational(1, 2)},
               {"psi", Side::right, Rational(1, 2)}};
  auto rules = [](const QPoly& cos, const QPoly& sin) {
    ness::DefectRules r;
    r.name = "fermionized SU(2)_2 rotation";
    r.images[FieldKey{"psi", Chirality::chiral}] = {{cos, {"chi2", Chirality::chiral}},
                                                    {sin, {"psi", Chirality::anti_chiral}}};
    r.images[FieldKey{"chi2", Chirality::anti_chiral}] = {{cos, {"psi", Chirality::anti_chiral}},
                                                          {-sin, {"chi2", Chirality::chiral}}};
    r.images[FieldKey{"chi1", Chirality::anti_chiral}] = {{QPoly(-1), {"chi1", Chirality::chiral}}};
    return r;
  };
  m.theta = rules(c, s);
  m.theta0 = rules(QPoly(0), QPoly(1));
  return m;
}

QPoly fermionized_current() {
  auto model = fermionized_model(qvar("cos"), qvar("sin"));
  QPoly j = ness::energy_current(model, ness::Side::right);
  // cos alpha_eff = |r|: cos^2 -> rho, sin^2 -> 1 - rho
  symbolic::RewriteSystem<Rational> eff;
  eff.add({{"cos", 2}}, qvar("rho"));
  eff.add({{"sin", 2}}, QPoly(1) - qvar("rho"));
  j = eff.normalize(j);
  if (j.mentions("cos") || j.mentions("sin"))
    throw std::logic_error("fermionized current still depends on the angle: " + j.to_string());
  return j;
}

FermionizationCheck compare_k2(const Rational& rho) {
  if (rho < 0 || rho > 1) throw std::invalid_argument("r rbar must lie in [0, 1]");
  static const QPoly fermionized = fermionized_current();
  static const QPoly symbolic_k2 = symbolic::specialize_k(energy_current_k(rotate_u1_stress()), Rational(2));
  FermionizationCheck c;
  c.rho = rho;
  c.fermionized = fermionized.substitute("rho", QPoly(rho));
  // the symbolic path may still carry s through s^2 -> 1 - rho; it must not
  c.symbolic = symbolic_k2.substitute("rho", QPoly(rho));
  c.agrees = !c.symbolic.mentions("s") && c.fermionized == c.symbolic;
  return c;
}

}  // namespace neqcft::su2k
