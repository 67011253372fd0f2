#include "neqcft/virasoro.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace neqcft::virasoro {

using fock::act_on_basis;
using fock::FockState;

Rational central_charge(Species model) {
  return model == Species::fermion ? make_rational(1, 2) : make_rational(1);
}

namespace {

// Applies the normal-ordered bilinear :x_{outer} x_{inner}: to a basis state and
// accumulates coefficient * result into the operator column.
void add_bilinear(GradedOperator<Rational>& op, std::size_t col, const FockState& state,
                  Species species, int flavor, int outer, int inner, const Rational& coefficient) {
  int first = inner;
  int second = outer;
  long sign = 1;
  if (outer > 0 && inner < 0) {
    std::swap(first, second);
    if (species == Species::fermion) sign = -1;
  }
  auto step1 = act_on_basis(species, state, flavor, first);
  if (!step1) return;
  auto step2 = act_on_basis(species, step1->state, flavor, second);
  if (!step2) return;
  auto row = op.codomain().find(step2->state);
  if (!row) return;  // above the cutoff
  op.add(*row, col, coefficient * (sign * step1->coefficient * step2->coefficient));
}

}  // namespace

VirasoroGenerator build_virasoro(int n, const SpacePtr& space, int flavor) {
  const int twice_cutoff = space->twice_cutoff();
  if (2 * std::abs(n) > twice_cutoff)
    throw std::invalid_argument("cutoff " + to_string(space->cutoff()) +
                                " too small to represent L_" + std::to_string(n));
  if (flavor < 0 || static_cast<std::size_t>(flavor) >= space->flavor_count())
    throw std::invalid_argument("flavor out of range");
  const Species species = space->species();
  GradedOperator<Rational> op(space, space, 2 * n * -1, 0);
  const int reach = twice_cutoff + 2 * std::abs(n) + 2;  // bound on |twice mode| that can contribute

  for (std::size_t j = 0; j < space->dimension(); ++j) {
    const FockState& s = space->state(j);
    if (species == Species::fermion) {
      // term m: coefficient m/2, modes b_{n-m+1/2} (outer) and b_{m-1/2} (inner)
      for (int m = -reach; m <= reach; ++m) {
        if (m == 0) continue;
        const int inner = 2 * m - 1;
        const int outer = 2 * n - 2 * m + 1;
        if (std::abs(inner) > reach || std::abs(outer) > reach) continue;
        add_bilinear(op, j, s, species, flavor, outer, inner, make_rational(m, 2));
      }
    } else {
      for (int m = -reach / 2; m <= reach / 2; ++m) {
        if (m == 0 || m == n) continue;
        add_bilinear(op, j, s, species, flavor, 2 * (n - m), 2 * m, make_rational(1, 2));
      }
    }
  }
  return {n, species, std::move(op)};
}

GradedOperator<Rational> total_virasoro(int n, const SpacePtr& space) {
  GradedOperator<Rational> total = build_virasoro(n, space, 0).realization;
  for (std::size_t f = 1; f < space->flavor_count(); ++f)
    total += build_virasoro(n, space, static_cast<int>(f)).realization;
  return total;
}

Rational central_charge_probe(Species model, int m, const Rational& cutoff) {
  if (m < 2) throw std::invalid_argument("central charge probe needs m >= 2");
  if (cutoff < m) throw std::invalid_argument("cutoff below probe mode: matrix elements missing");
  auto space = fock::enumerate_basis(model, cutoff);
  auto up = build_virasoro(-m, space).realization;
  auto down = build_virasoro(m, space).realization;
  Rational vev = fock::commutator(down, up).entry(space->vacuum_index(), space->vacuum_index());
  return Rational(12 * vev / (m * m * m - m));
}

Rational commutator_deviation(const SpacePtr& space, int m, int n) {
  const int safe = space->twice_cutoff() - 2 * (std::abs(m) + std::abs(n));
  if (safe < 0) throw std::invalid_argument("empty safe subspace for commutator check");
  auto lm = build_virasoro(m, space).realization;
  auto ln = build_virasoro(n, space).realization;
  auto residual = fock::commutator(lm, ln);
  if (m - n != 0) residual -= build_virasoro(m + n, space).realization * Rational(m - n);
  if (m + n == 0) {
    Rational central = central_charge(space->species()) * (m * m * m - m) / 12;
    residual -= GradedOperator<Rational>::identity(space) * central;
  }
  return residual.max_abs_on(safe);
}

Rational hermiticity_deviation(const SpacePtr& space, int n) {
  const int safe = space->twice_cutoff() - 2 * std::abs(n);
  if (safe < 0) throw std::invalid_argument("empty safe subspace for hermiticity check");
  const auto gram = fock::gram_diagonal(*space);
  auto ln = build_virasoro(n, space).realization;
  auto lmn = build_virasoro(-n, space).realization;
  Rational worst = 0;
  auto track = [&](const Rational& diff) {
    Rational a = abs(diff);
    if (a > worst) worst = a;
  };
  for (std::size_t j = 0; j < space->dimension(); ++j) {
    if (space->state(j).twice_level() > safe) continue;
    for (const auto& [i, v] : ln.column(j)) track(gram[i] * v - gram[j] * lmn.entry(j, i));
  }
  for (std::size_t i = 0; i < space->dimension(); ++i)
    for (const auto& [j, v] : lmn.column(i)) {
      if (space->state(j).twice_level() > safe) continue;
      track(gram[j] * v - gram[i] * ln.entry(i, j));
    }
  return worst;
}

Rational level_operator_deviation(const SpacePtr& space) {
  auto l0 = total_virasoro(0, space);
  GradedOperator<Rational> level(space, space, 0, 0);
  for (std::size_t i = 0; i < space->dimension(); ++i) level.add(i, i, space->state(i).level());
  return (l0 - level).max_abs_on(space->twice_cutoff());
}

AlgebraReport check_algebra(Species model, const Rational& cutoff, int max_mode) {
  if (max_mode < 1) throw std::invalid_argument("max mode must be >= 1");
  auto space = fock::enumerate_basis(model, cutoff);
  AlgebraReport report{model, cutoff, {}, 0, 0, 0, 0, false};
  for (int m = 2; m <= max_mode; ++m) report.probes.push_back(central_charge_probe(model, m, cutoff));
  report.central_charge = central_charge_probe(model, 2, cutoff);
  for (int m = -max_mode; m <= max_mode; ++m)
    for (int n = -max_mode; n <= max_mode; ++n) {
      Rational d = commutator_deviation(space, m, n);
      if (d > report.max_commutator_deviation) report.max_commutator_deviation = d;
    }
  for (int n = -max_mode; n <= max_mode; ++n) {
    Rational d = hermiticity_deviation(space, n);
    if (d > report.max_hermiticity_deviation) report.max_hermiticity_deviation = d;
  }
  report.level_deviation = level_operator_deviation(space);
  const Rational c = central_charge(model);
  bool probes_ok = std::all_of(report.probes.begin(), report.probes.end(),
                               [&](const Rational& p) { return p == c; });
  report.passed = probes_ok && report.central_charge == c && is_zero(report.max_commutator_deviation) &&
                  is_zero(report.max_hermiticity_deviation) && is_zero(report.level_deviation);
  return report;
}

}  // namespace neqcft::virasoro
