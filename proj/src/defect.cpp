#include "neqcft/defect.hpp"

#include "neqcft/virasoro.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace neqcft::defect {

using fock::Chirality;
using fock::FockState;
using fock::Side;
using fock::Species;

RotationAngle RotationAngle::radians(double alpha) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("angle must be finite");
  RotationAngle a;
  a.radians_ = alpha;
  return a;
}

RotationAngle RotationAngle::exact(const Rational& cos, const Rational& sin) {
  if (cos * cos + sin * sin != 1)
    throw std::invalid_argument("(" + to_string(cos) + ", " + to_string(sin) +
                                ") is not on the unit circle");
  RotationAngle a;
  a.exact_ = {cos, sin};
  a.radians_ = std::atan2(sin.get_d(), cos.get_d());
  return a;
}

double RotationAngle::cos() const { return exact_ ? exact_->first.get_d() : std::cos(radians_); }
double RotationAngle::sin() const { return exact_ ? exact_->second.get_d() : std::sin(radians_); }

RotationAngle RotationAngle::operator-() const {
  if (exact_) return exact(exact_->first, Rational(-exact_->second));
  return radians(-radians_);
}

RotationAngle operator+(const RotationAngle& a, const RotationAngle& b) {
  if (a.is_exact() && b.is_exact()) {
    const Rational& c1 = a.cos_exact();
    const Rational& s1 = a.sin_exact();
    const Rational& c2 = b.cos_exact();
    const Rational& s2 = b.sin_exact();
    return RotationAngle::exact(c1 * c2 - s1 * s2, s1 * c2 + c1 * s2);
  }
  return RotationAngle::radians(a.value() + b.value());
}

std::string RotationAngle::label() const {
  std::ostringstream os;
  if (exact_)
    os << "(cos, sin) = (" << to_string(exact_->first) << ", " << to_string(exact_->second) << ")";
  else
    os << "alpha = " << radians_;
  return os.str();
}

BogoliubovSpec<Rational> exact_spec(const RotationAngle& a) {
  if (!a.is_exact()) throw std::invalid_argument("angle has no exact (cos, sin) representation");
  return {a.cos_exact(), a.sin_exact()};
}

BogoliubovSpec<double> float_spec(const RotationAngle& a) { return {a.cos(), a.sin()}; }

SpacePtr incoming_space(const Rational& cutoff) {
  return fock::make_space(Species::fermion, cutoff,
                          {{Side::left, Chirality::anti_chiral}, {Side::right, Chirality::chiral}});
}

SpacePtr outgoing_space(const Rational& cutoff) {
  return fock::make_space(Species::fermion, cutoff,
                          {{Side::right, Chirality::anti_chiral}, {Side::left, Chirality::chiral}});
}

template <class Scalar>
bool negligible(const Scalar& deviation) {
  if constexpr (ScalarTraits<Scalar>::exact)
    return ScalarTraits<Scalar>::is_zero(deviation);
  else
    return std::abs(deviation) <= 1e-12;
}

template <class Scalar>
DefectRealization<Scalar> build_theta_from_map(const FlavorMap<Scalar>& map, const Rational& cutoff,
                                               std::string source) {
  using T = ScalarTraits<Scalar>;
  auto in = incoming_space(cutoff);
  auto out = outgoing_space(cutoff);
  GradedOperator<Scalar> theta(in, out, 0, 0);
  for (std::size_t j = 0; j < in->dimension(); ++j) {
    std::map<FockState, Scalar> vec{{FockState(), T::one()}};
    auto modes = in->state(j).modes();
    for (auto it = modes.rbegin(); it != modes.rend(); ++it) {
      std::map<FockState, Scalar> next;
      for (const auto& [state, coeff] : vec)
        for (int slot = 0; slot < 2; ++slot) {
          const Scalar& m = map[it->flavor][slot];
          if (T::is_zero(m)) continue;
          auto hit = fock::act_on_basis(Species::fermion, state, slot, it->twice_mode);
          if (!hit) continue;
          next[hit->state] += coeff * m * Scalar(hit->coefficient);
        }
      vec = std::move(next);
    }
    for (const auto& [state, coeff] : vec) theta.add(*out->find(state), j, coeff);
  }
  return {std::move(theta), map, std::move(source)};
}

template <class Scalar>
DefectRealization<Scalar> build_theta(const BogoliubovSpec<Scalar>& spec, const Rational& cutoff) {
  if (cutoff < Rational(1, 2)) throw std::invalid_argument("defect map needs cutoff >= 1/2");
  std::ostringstream os;
  os << "Bogoliubov rotation cos=" << ScalarTraits<Scalar>::to_string(spec.cos_alpha)
     << " sin=" << ScalarTraits<Scalar>::to_string(spec.sin_alpha);
  return build_theta_from_map(spec.flavor_map(), cutoff, os.str());
}

template <class Scalar>
DefectRealization<Scalar> skewed(const DefectRealization<Scalar>& d, const Scalar& eps) {
  DefectRealization<Scalar> out = d;
  const auto& space = d.theta.domain();
  for (std::size_t j = 0; j < space.dimension(); ++j)
    for (std::size_t i = 0; i < space.dimension(); ++i)
      if (space.state(i).twice_level() == space.state(j).twice_level()) out.theta.add(i, j, eps);
  out.source = d.source + " + level-block skew";
  return out;
}

namespace {

template <class Scalar>
GradedOperator<Scalar> transpose(const GradedOperator<Scalar>& op) {
  GradedOperator<Scalar> out(op.codomain_ptr(), op.domain_ptr(), -op.twice_level_shift(),
                             op.parity_shift());
  for (std::size_t j = 0; j < op.domain().dimension(); ++j)
    for (const auto& [row, v] : op.column(j)) out.add(j, row, v);
  return out;
}

template <class Scalar>
Scalar max_entry(const std::vector<Scalar>& v) {
  Scalar best = ScalarTraits<Scalar>::zero();
  for (const auto& x : v) {
    Scalar m = ScalarTraits<Scalar>::magnitude(x);
    if (m > best) best = m;
  }
  return best;
}

template <class Scalar>
StressImage<Scalar> decompose(const std::vector<Scalar>& v, const std::vector<Scalar>& tl,
                              const std::vector<Scalar>& tbar_r) {
  using T = ScalarTraits<Scalar>;
  auto coefficient = [&](const std::vector<Scalar>& basis) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!T::is_zero(basis[i])) return Scalar(v[i] / basis[i]);
    throw std::logic_error("empty stress-tensor state");
  };
  StressImage<Scalar> img{coefficient(tl), coefficient(tbar_r), T::zero()};
  std::vector<Scalar> rest = v;
  for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= img.to_Tl * tl[i] + img.to_Tbar_r * tbar_r[i];
  img.remainder = max_entry(rest);
  return img;
}

}  // namespace

template <class Scalar>
Scalar intertwining_deviation(const DefectRealization<Scalar>& d, int n) {
  const auto& in = d.theta.domain_ptr();
  const auto& out = d.theta.codomain_ptr();
  const int safe = in->twice_cutoff() - 2 * std::abs(n);
  if (safe < 0) throw std::invalid_argument("empty safe subspace for intertwining check");
  auto l_in = virasoro::total_virasoro(n, in).template convert<Scalar>();
  auto l_out = virasoro::total_virasoro(n, out).template convert<Scalar>();
  return (d.theta * l_in - l_out * d.theta).max_abs_on(safe);
}

template <class Scalar>
Scalar vacuum_deviation(const DefectRealization<Scalar>& d) {
  std::vector<Scalar> col(d.theta.codomain().dimension(), ScalarTraits<Scalar>::zero());
  for (const auto& [row, v] : d.theta.column(d.theta.domain().vacuum_index())) col[row] = v;
  col[d.theta.codomain().vacuum_index()] -= ScalarTraits<Scalar>::one();
  return max_entry(col);
}

template <class Scalar>
MomentumReport<Scalar> check_momentum_continuity(const DefectRealization<Scalar>& d) {
  const auto& in = d.theta.domain_ptr();
  const auto& out = d.theta.codomain_ptr();
  if (in->twice_cutoff() < 4) throw std::invalid_argument("momentum continuity needs cutoff >= 2");
  auto stress_state = [](const SpacePtr& space, Side side, Chirality chir) {
    auto l = virasoro::build_virasoro(-2, space, space->flavor_index(side, chir)).realization;
    return l.template convert<Scalar>().apply(fock::basis_vector<Scalar>(*space, space->vacuum_index()));
  };
  auto tr = stress_state(in, Side::right, Chirality::chiral);
  auto tbar_l = stress_state(in, Side::left, Chirality::anti_chiral);
  auto tl = stress_state(out, Side::left, Chirality::chiral);
  auto tbar_r = stress_state(out, Side::right, Chirality::anti_chiral);

  MomentumReport<Scalar> r;
  auto theta_tr = d.theta.apply(tr);
  auto theta_tbar_l = d.theta.apply(tbar_l);
  r.image_Tr = decompose(theta_tr, tl, tbar_r);
  r.image_Tbar_l = decompose(theta_tbar_l, tl, tbar_r);
  std::vector<Scalar> diff(theta_tr.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = theta_tr[i] + theta_tbar_l[i] - tl[i] - tbar_r[i];
  r.deviation = max_entry(diff);
  r.holds = negligible(r.deviation);
  return r;
}

template <class Scalar>
Scalar anticommutator_deviation(const DefectRealization<Scalar>& d, const fock::ModeIndex& a,
                                const fock::ModeIndex& b) {
  const auto& in = d.theta.domain_ptr();
  const auto& out = d.theta.codomain_ptr();
  const int safe = in->twice_cutoff() - std::abs(a.twice_value) - std::abs(b.twice_value);
  if (safe < 0) throw std::invalid_argument("mode pair exceeds the cutoff");
  auto dagger = transpose(d.theta);
  auto xa = d.theta * fock::mode_operator<Scalar>(in, a) * dagger;
  auto xb = d.theta * fock::mode_operator<Scalar>(in, b) * dagger;
  auto residual = fock::anticommutator(xa, xb);
  if (in->flavor_of(a) == in->flavor_of(b) && a.twice_value + b.twice_value == 0)
    residual -= GradedOperator<Scalar>::identity(out);
  return residual.max_abs_on(safe);
}

template <class Scalar>
Scalar ope_deviation(const DefectRealization<Scalar>& d) {
  const auto& in = d.theta.domain();
  const int cap = in.twice_cutoff();
  std::vector<fock::ModeIndex> modes;
  for (const auto& f : in.flavors())
    for (int tw = -cap; tw <= cap; ++tw)
      if (tw % 2 != 0) modes.push_back({Species::fermion, f.side, f.chirality, tw});
  Scalar worst = ScalarTraits<Scalar>::zero();
  for (const auto& a : modes)
    for (const auto& b : modes) {
      if (std::abs(a.twice_value) + std::abs(b.twice_value) > cap) continue;
      Scalar dev = anticommutator_deviation(d, a, b);
      if (dev > worst) worst = dev;
    }
  return worst;
}

template <class Scalar>
Scalar composition_deviation(const DefectRealization<Scalar>& a, const DefectRealization<Scalar>& b,
                             const DefectRealization<Scalar>& ab) {
  auto second = b.theta.relabeled(b.theta.domain_ptr(), a.theta.domain_ptr());
  return (a.theta * second - ab.theta).max_abs_on(a.theta.domain().twice_cutoff());
}

template <class Scalar>
Scalar inverse_deviation(const DefectRealization<Scalar>& d,
                         const DefectRealization<Scalar>& candidate) {
  auto inv = fock::invert_level_preserving(d.theta);
  auto cand = candidate.theta.relabeled(d.theta.codomain_ptr(), d.theta.domain_ptr());
  return (inv - cand).max_abs_on(d.theta.codomain().twice_cutoff());
}

template <class Scalar>
Scalar min_block_determinant(const DefectRealization<Scalar>& d) {
  auto dets = fock::level_block_determinants(d.theta);
  Scalar best = ScalarTraits<Scalar>::magnitude(dets.begin()->second);
  for (const auto& [level, det] : dets) {
    Scalar m = ScalarTraits<Scalar>::magnitude(det);
    if (m < best) best = m;
  }
  return best;
}

template <class Scalar>
bool reflection_factorizes(const DefectRealization<Scalar>& d) {
  const auto& in = d.theta.domain();
  const auto& out = d.theta.codomain();
  const int in_bar_l = in.flavor_index(Side::left, Chirality::anti_chiral);
  const int in_r = in.flavor_index(Side::right, Chirality::chiral);
  const int out_l = out.flavor_index(Side::left, Chirality::chiral);
  const int out_bar_r = out.flavor_index(Side::right, Chirality::anti_chiral);
  auto only = [](const FockState& s, int flavor) {
    for (auto o : s.modes())
      if (o.flavor != flavor) return false;
    return true;
  };
  for (std::size_t j = 0; j < in.dimension(); ++j) {
    const FockState& s = in.state(j);
    if (s.is_vacuum()) continue;
    int target = -1;
    if (only(s, in_bar_l)) target = out_l;
    else if (only(s, in_r)) target = out_bar_r;
    else continue;
    if (d.theta.column(j).empty()) return false;
    for (const auto& [row, v] : d.theta.column(j))
      if (!only(out.state(row), target)) return false;
  }
  return true;
}

#define NEQCFT_DEFECT_INSTANTIATE(S)                                                                \
  template bool negligible<S>(const S&);                                                            \
  template DefectRealization<S> build_theta_from_map<S>(const FlavorMap<S>&, const Rational&,       \
                                                        std::string);                               \
  template DefectRealization<S> build_theta<S>(const BogoliubovSpec<S>&, const Rational&);          \
  template DefectRealization<S> skewed<S>(const DefectRealization<S>&, const S&);                   \
  template S intertwining_deviation<S>(const DefectRealization<S>&, int);                           \
  template S vacuum_deviation<S>(const DefectRealization<S>&);                                      \
  template MomentumReport<S> check_momentum_continuity<S>(const DefectRealization<S>&);             \
  template S anticommutator_deviation<S>(const DefectRealization<S>&, const fock::ModeIndex&,       \
                                         const fock::ModeIndex&);                                   \
  template S ope_deviation<S>(const DefectRealization<S>&);                                         \
  template S composition_deviation<S>(const DefectRealization<S>&, const DefectRealization<S>&,     \
                                      const DefectRealization<S>&);                                 \
  template S inverse_deviation<S>(const DefectRealization<S>&, const DefectRealization<S>&);        \
  template S min_block_determinant<S>(const DefectRealization<S>&);                                 \
  template bool reflection_factorizes<S>(const DefectRealization<S>&);

NEQCFT_DEFECT_INSTANTIATE(Rational)
NEQCFT_DEFECT_INSTANTIATE(double)

#undef NEQCFT_DEFECT_INSTANTIATE

}  // namespace neqcft::defect
