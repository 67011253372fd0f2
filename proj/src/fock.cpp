#include "neqcft/fock.hpp"

#include "neqcft/graded_operator.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace neqcft::fock {

using neqcft::to_string;

std::string to_string(Species s) { return s == Species::fermion ? "fermion" : "boson"; }
std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }
std::string to_string(Chirality c) { return c == Chirality::chiral ? "chiral" : "anti-chiral"; }

Species parse_species(const std::string& name) {
  if (name == "fermion") return Species::fermion;
  if (name == "boson") return Species::boson;
  throw std::invalid_argument("unknown model '" + name + "' (expected fermion or boson)");
}

ModeIndex ModeIndex::fermion(const Rational& s, Side side, Chirality chirality) {
  Rational twice = s * 2;
  if (twice.get_den() != 1 || twice.get_num() % 2 == 0)
    throw std::invalid_argument("fermion mode must be half-odd, got " + to_string(s));
  return {Species::fermion, side, chirality, static_cast<int>(twice.get_num().get_si())};
}

ModeIndex ModeIndex::boson(int n, Side side, Chirality chirality) {
  if (n == 0) throw std::invalid_argument("boson zero mode is excluded (zero-charge sector)");
  return {Species::boson, side, chirality, 2 * n};
}

ModeIndex ModeIndex::adjoint() const {
  ModeIndex m = *this;
  m.twice_value = -twice_value;
  return m;
}

std::string ModeIndex::label() const {
  std::string name = species == Species::fermion ? "b" : "a";
  if (chirality == Chirality::anti_chiral) name += "bar";
  name += side == Side::left ? "^l" : "^r";
  return name + "_" + to_string(value());
}

namespace {

int count_parity(Species species, const std::vector<Occupation>& modes) {
  return species == Species::fermion ? static_cast<int>(modes.size() % 2) : 0;
}

}  // namespace

FockState::FockState(Species species, std::vector<Occupation> modes) : modes_(std::move(modes)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const auto& m = modes_[i];
    if (m.twice_mode >= 0) throw std::invalid_argument("occupied modes must be creation modes");
    if (species == Species::fermion && m.twice_mode % 2 == 0)
      throw std::invalid_argument("fermion modes are half-odd");
    if (species == Species::boson && m.twice_mode % 2 != 0)
      throw std::invalid_argument("boson modes are integers");
    if (i > 0) {
      const auto& prev = modes_[i - 1];
      if (prev > m) throw std::invalid_argument("modes not in canonical order");
      if (species == Species::fermion && prev == m)
        throw std::invalid_argument("repeated fermion mode (Pauli exclusion)");
    }
    twice_level_ -= m.twice_mode;
  }
  parity_ = count_parity(species, modes_);
}

std::vector<Occupation> FockState::modes_of(int flavor) const {
  std::vector<Occupation> out;
  for (auto m : modes_)
    if (m.flavor == flavor) out.push_back(m);
  return out;
}

std::string FockState::label(std::span<const std::string> flavor_names) const {
  if (modes_.empty()) return "|0>";
  std::ostringstream os;
  for (auto m : modes_) {
    std::string name = static_cast<std::size_t>(m.flavor) < flavor_names.size()
                           ? flavor_names[m.flavor]
                           : "f" + std::to_string(m.flavor);
    os << name << "_" << to_string(make_rational(m.twice_mode, 2)) << " ";
  }
  os << "|0>";
  return os.str();
}

std::optional<BasisAction> act_on_basis(Species species, const FockState& state, int flavor,
                                        int twice_mode) {
  const auto modes = state.modes();
  std::vector<Occupation> out(modes.begin(), modes.end());
  if (twice_mode < 0) {
    Occupation created{flavor, twice_mode};
    auto pos = std::lower_bound(out.begin(), out.end(), created);
    long coefficient = 1;
    if (species == Species::fermion) {
      if (pos != out.end() && *pos == created) return std::nullopt;  // Pauli exclusion
      if ((pos - out.begin()) % 2 == 1) coefficient = -1;
    }
    out.insert(pos, created);
    return BasisAction{FockState(species, std::move(out)), coefficient};
  }
  if (twice_mode == 0) throw std::invalid_argument("zero mode is not represented");
  Occupation partner{flavor, -twice_mode};
  auto pos = std::lower_bound(out.begin(), out.end(), partner);
  if (pos == out.end() || *pos != partner) return std::nullopt;
  long coefficient = 1;
  if (species == Species::fermion) {
    if ((pos - out.begin()) % 2 == 1) coefficient = -1;
  } else {
    auto last = std::upper_bound(pos, out.end(), partner);
    coefficient = static_cast<long>(twice_mode / 2) * static_cast<long>(last - pos);
  }
  out.erase(pos);
  return BasisAction{FockState(species, std::move(out)), coefficient};
}

namespace {

// All canonical single-flavor mode lists with total twice-level <= budget.
void single_flavor_states(Species species, int budget, int flavor,
                          std::vector<std::vector<Occupation>>& out) {
  const int step = 2;
  const int smallest = species == Species::fermion ? 1 : 2;
  std::vector<Occupation> current;
  // Parts are chosen largest first, so the stored list is ascending in mode value.
  std::function<void(int, int)> rec = [&](int max_part, int remaining) {
    out.push_back(current);
    for (int part = smallest; part <= std::min(max_part, remaining); part += step) {
      current.push_back(Occupation{flavor, -part});
      const int next_max = species == Species::fermion ? part - step : part;
      rec(next_max, remaining - part);
      current.pop_back();
    }
  };
  rec(budget, budget);
}

}  // namespace

StateSpace::StateSpace(Species species, const Rational& cutoff, std::vector<Flavor> flavors)
    : species_(species), cutoff_(cutoff), flavors_(std::move(flavors)) {
  if (sgn(cutoff_) < 0) throw std::invalid_argument("cutoff must be non-negative");
  if (flavors_.empty()) throw std::invalid_argument("state space needs at least one flavor");
  for (std::size_t i = 0; i < flavors_.size(); ++i)
    for (std::size_t j = i + 1; j < flavors_.size(); ++j)
      if (flavors_[i] == flavors_[j]) throw std::invalid_argument("duplicate flavor in state space");
  const Rational doubled = cutoff_ * 2;
  mpz_class twice = doubled.get_num() / doubled.get_den();  // floor for cutoff >= 0
  twice_cutoff_ = static_cast<int>(twice.get_si());

  std::vector<std::vector<Occupation>> partial{{}};
  for (std::size_t f = 0; f < flavors_.size(); ++f) {
    std::vector<std::vector<Occupation>> singles;
    single_flavor_states(species_, twice_cutoff_, static_cast<int>(f), singles);
    std::vector<std::vector<Occupation>> next;
    for (const auto& head : partial) {
      int used = 0;
      for (auto o : head) used -= o.twice_mode;
      for (const auto& tail : singles) {
        int extra = 0;
        for (auto o : tail) extra -= o.twice_mode;
        if (used + extra > twice_cutoff_) continue;
        auto combined = head;
        combined.insert(combined.end(), tail.begin(), tail.end());
        next.push_back(std::move(combined));
      }
    }
    partial = std::move(next);
  }
  for (auto& modes : partial) basis_.emplace_back(species_, std::move(modes));
  std::sort(basis_.begin(), basis_.end(), [](const FockState& a, const FockState& b) {
    if (a.twice_level() != b.twice_level()) return a.twice_level() < b.twice_level();
    return a < b;
  });
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
}

std::optional<std::size_t> StateSpace::find(const FockState& state) const {
  auto it = index_.find(state);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int StateSpace::flavor_index(Side side, Chirality chirality) const {
  for (std::size_t i = 0; i < flavors_.size(); ++i)
    if (flavors_[i].side == side && flavors_[i].chirality == chirality) return static_cast<int>(i);
  throw std::invalid_argument("state space has no " + to_string(side) + " " + to_string(chirality) +
                              " modes");
}

int StateSpace::flavor_of(const ModeIndex& mode) const {
  if (mode.species != species_)
    throw std::invalid_argument("species mismatch: " + to_string(mode.species) + " mode on " +
                                to_string(species_) + " space");
  return flavor_index(mode.side, mode.chirality);
}

bool StateSpace::compatible(const StateSpace& other) const {
  return species_ == other.species_ && twice_cutoff_ == other.twice_cutoff_ &&
         flavors_.size() == other.flavors_.size();
}

std::string StateSpace::describe() const {
  std::ostringstream os;
  os << to_string(species_) << " space, cutoff " << to_string(cutoff_) << ", " << flavors_.size()
     << " flavor(s), dimension " << basis_.size();
  return os.str();
}

SpacePtr enumerate_basis(Species species, const Rational& cutoff) {
  return make_space(species, cutoff, {Flavor{Side::right, Chirality::chiral}});
}

SpacePtr make_space(Species species, const Rational& cutoff, std::vector<Flavor> flavors) {
  return std::make_shared<const StateSpace>(species, cutoff, std::move(flavors));
}

std::size_t generating_function_dimension(Species species, const Rational& cutoff,
                                          std::size_t flavors) {
  const Rational doubled = cutoff * 2;
  mpz_class twice = doubled.get_num() / doubled.get_den();
  const int n = static_cast<int>(twice.get_si());
  // coefficients of the level-generating function in powers of q^{1/2}
  std::vector<mpz_class> poly(n + 1, 0);
  poly[0] = 1;
  for (std::size_t f = 0; f < flavors; ++f) {
    if (species == Species::fermion) {
      for (int part = 1; part <= n; part += 2)
        for (int d = n; d >= part; --d) poly[d] += poly[d - part];  // (1 + q^part)
    } else {
      for (int part = 2; part <= n; part += 2)
        for (int d = part; d <= n; ++d) poly[d] += poly[d - part];  // 1/(1 - q^part)
    }
  }
  mpz_class total = 0;
  for (const auto& c : poly) total += c;
  return static_cast<std::size_t>(total.get_ui());
}

std::vector<Rational> gram_diagonal(const StateSpace& space) {
  std::vector<Rational> out;
  out.reserve(space.dimension());
  for (const auto& s : space.basis()) {
    Rational norm = 1;
    if (space.species() == Species::boson) {
      auto modes = s.modes();
      for (std::size_t i = 0; i < modes.size();) {
        std::size_t j = i;
        while (j < modes.size() && modes[j] == modes[i]) ++j;
        const long n = -modes[i].twice_mode / 2;
        const long k = static_cast<long>(j - i);
        for (long m = 1; m <= k; ++m) norm *= n * m;
        i = j;
      }
    }
    out.push_back(norm);
  }
  return out;
}

namespace {

template <class Scalar>
using Dense = std::vector<std::vector<Scalar>>;

template <class Scalar>
std::map<int, std::vector<std::size_t>> level_blocks(const StateSpace& space) {
  std::map<int, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < space.dimension(); ++i)
    blocks[space.state(i).twice_level()].push_back(i);
  return blocks;
}

template <class Scalar>
void require_level_preserving(const GradedOperator<Scalar>& op) {
  if (op.twice_level_shift() != 0 || op.parity_shift() != 0 ||
      !op.domain().compatible(op.codomain()))
    throw std::invalid_argument("operator is not level preserving on a square space");
}

template <class Scalar>
Dense<Scalar> extract_block(const GradedOperator<Scalar>& op, const std::vector<std::size_t>& idx) {
  Dense<Scalar> m(idx.size(), std::vector<Scalar>(idx.size(), ScalarTraits<Scalar>::zero()));
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (std::size_t r = 0; r < idx.size(); ++r) m[r][c] = op.entry(idx[r], idx[c]);
  return m;
}

// Gauss-Jordan elimination; returns determinant and fills inverse when requested.
template <class Scalar>
Scalar eliminate(Dense<Scalar> a, Dense<Scalar>* inverse) {
  using T = ScalarTraits<Scalar>;
  const std::size_t n = a.size();
  Dense<Scalar> inv(n, std::vector<Scalar>(n, T::zero()));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = T::one();
  Scalar det = T::one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    if constexpr (T::exact) {
      for (std::size_t r = col; r < n; ++r)
        if (!T::is_zero(a[r][col])) { pivot = r; break; }
    } else {
      double best = 0;
      for (std::size_t r = col; r < n; ++r)
        if (T::magnitude(a[r][col]) > best) { best = T::magnitude(a[r][col]); pivot = r; }
    }
    if (pivot == n) return T::zero();
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(inv[pivot], inv[col]);
      det = T::zero() - det;
    }
    Scalar p = a[col][col];
    det *= p;
    for (std::size_t c = 0; c < n; ++c) { a[col][c] /= p; inv[col][c] /= p; }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || T::is_zero(a[r][col])) continue;
      Scalar f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  if (inverse) *inverse = std::move(inv);
  return det;
}

}  // namespace

template <class Scalar>
GradedOperator<Scalar> invert_level_preserving(const GradedOperator<Scalar>& op) {
  require_level_preserving(op);
  GradedOperator<Scalar> out(op.codomain_ptr(), op.domain_ptr(), 0, 0);
  for (const auto& [level, idx] : level_blocks<Scalar>(op.domain())) {
    Dense<Scalar> inv;
    Scalar det = eliminate(extract_block(op, idx), &inv);
    if (ScalarTraits<Scalar>::is_zero(det))
      throw std::domain_error("operator is singular on level " + to_string(make_rational(level, 2)));
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) out.add(idx[r], idx[c], inv[r][c]);
  }
  return out;
}

template <class Scalar>
std::map<int, Scalar> level_block_determinants(const GradedOperator<Scalar>& op) {
  require_level_preserving(op);
  std::map<int, Scalar> out;
  for (const auto& [level, idx] : level_blocks<Scalar>(op.domain()))
    out[level] = eliminate(extract_block(op, idx), static_cast<Dense<Scalar>*>(nullptr));
  return out;
}

template GradedOperator<Rational> invert_level_preserving(const GradedOperator<Rational>&);
template GradedOperator<double> invert_level_preserving(const GradedOperator<double>&);
template std::map<int, Rational> level_block_determinants(const GradedOperator<Rational>&);
template std::map<int, double> level_block_determinants(const GradedOperator<double>&);

}  // namespace neqcft::fock
