#pragma once

// Sparse level- and parity-graded linear maps between truncated state spaces.

#include "neqcft/fock.hpp"
#include "neqcft/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace neqcft::fock {

template <class Scalar>
class GradedOperator {
 public:
  using Traits = ScalarTraits<Scalar>;
  using Column = std::map<std::size_t, Scalar>;

  GradedOperator(SpacePtr domain, SpacePtr codomain, int twice_level_shift, int parity_shift)
      : domain_(std::move(domain)),
        codomain_(std::move(codomain)),
        twice_level_shift_(twice_level_shift),
        parity_shift_(parity_shift & 1),
        columns_(domain_->dimension()) {}

  static GradedOperator identity(SpacePtr space) {
    GradedOperator op(space, space, 0, 0);
    for (std::size_t i = 0; i < space->dimension(); ++i) op.add(i, i, Traits::one());
    return op;
  }

  const StateSpace& domain() const { return *domain_; }
  const StateSpace& codomain() const { return *codomain_; }
  const SpacePtr& domain_ptr() const { return domain_; }
  const SpacePtr& codomain_ptr() const { return codomain_; }
  int twice_level_shift() const { return twice_level_shift_; }
  Rational level_shift() const { return make_rational(twice_level_shift_, 2); }
  int parity_shift() const { return parity_shift_; }

  /// Accumulates value into (row, col). Entries must respect the grading.
  void add(std::size_t row, std::size_t col, const Scalar& value) {
    if (Traits::is_zero(value)) return;
    const auto& in = domain_->state(col);
    const auto& out = codomain_->state(row);
    if (out.twice_level() != in.twice_level() + twice_level_shift_ ||
        ((out.parity() + in.parity()) & 1) != parity_shift_)
      throw std::logic_error("graded operator entry violates level/parity grading");
    auto [it, inserted] = columns_[col].try_emplace(row, value);
    if (!inserted) {
      it->second += value;
      if (Traits::is_zero(it->second)) columns_[col].erase(it);
    }
  }

  Scalar entry(std::size_t row, std::size_t col) const {
    const auto& c = columns_.at(col);
    auto it = c.find(row);
    return it == c.end() ? Traits::zero() : it->second;
  }

  const Column& column(std::size_t col) const { return columns_.at(col); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  std::vector<Scalar> apply(std::span<const Scalar> v) const {
    if (v.size() != domain_->dimension()) throw std::invalid_argument("vector dimension mismatch");
    std::vector<Scalar> out(codomain_->dimension(), Traits::zero());
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (Traits::is_zero(v[j])) continue;
      for (const auto& [row, value] : columns_[j]) out[row] += value * v[j];
    }
    return out;
  }

  /// Largest |entry| over columns whose domain state has level <= bound
  /// (twice units). This is the "safe subspace" restriction used by every
  /// equality check on truncated spaces.
  Scalar max_abs_on(int max_twice_level) const {
    Scalar best = Traits::zero();
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (domain_->state(j).twice_level() > max_twice_level) continue;
      for (const auto& [row, value] : columns_[j]) {
        Scalar m = Traits::magnitude(value);
        if (m > best) best = m;
      }
    }
    return best;
  }

  std::size_t columns_within(int max_twice_level) const {
    std::size_t n = 0;
    for (const auto& s : domain_->basis())
      if (s.twice_level() <= max_twice_level) ++n;
    return n;
  }

  GradedOperator& operator*=(const Scalar& factor) {
    for (auto& c : columns_) {
      for (auto it = c.begin(); it != c.end();) {
        it->second *= factor;
        it = Traits::is_zero(it->second) ? c.erase(it) : std::next(it);
      }
    }
    return *this;
  }

  GradedOperator& operator+=(const GradedOperator& other) { return accumulate(other, Traits::one()); }
  GradedOperator& operator-=(const GradedOperator& other) {
    return accumulate(other, Scalar(Traits::zero() - Traits::one()));
  }

  friend GradedOperator operator+(GradedOperator a, const GradedOperator& b) { return a += b; }
  friend GradedOperator operator-(GradedOperator a, const GradedOperator& b) { return a -= b; }
  friend GradedOperator operator*(GradedOperator a, const Scalar& s) { return a *= s; }
  friend GradedOperator operator*(const Scalar& s, GradedOperator a) { return a *= s; }

  /// Composition (a after b).
  friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
    if (!a.domain_->compatible(*b.codomain_))
      throw std::invalid_argument("cannot compose operators on incompatible spaces");
    GradedOperator out(b.domain_, a.codomain_, a.twice_level_shift_ + b.twice_level_shift_,
                       a.parity_shift_ + b.parity_shift_);
    for (std::size_t j = 0; j < b.columns_.size(); ++j) {
      auto& target = out.columns_[j];
      for (const auto& [mid, bv] : b.columns_[j]) {
        for (const auto& [row, av] : a.columns_[mid]) {
          Scalar prod = av * bv;
          auto [it, inserted] = target.try_emplace(row, prod);
          if (!inserted) it->second += prod;
        }
      }
      for (auto it = target.begin(); it != target.end();)
        it = Traits::is_zero(it->second) ? target.erase(it) : std::next(it);
    }
    return out;
  }

  /// Re-labels domain and codomain with compatible spaces (mode-by-mode
  /// identification of isomorphic truncated spaces).
  GradedOperator relabeled(SpacePtr domain, SpacePtr codomain) const {
    if (!domain->compatible(*domain_) || !codomain->compatible(*codomain_))
      throw std::invalid_argument("relabel requires compatible spaces");
    GradedOperator out = *this;
    out.domain_ = std::move(domain);
    out.codomain_ = std::move(codomain);
    return out;
  }

  template <class Other>
  GradedOperator<Other> convert() const {
    GradedOperator<Other> out(domain_, codomain_, twice_level_shift_, parity_shift_);
    for (std::size_t j = 0; j < columns_.size(); ++j)
      for (const auto& [row, v] : columns_[j]) out.add(row, j, convert_scalar<Other>(v));
    return out;
  }

 private:
  template <class Other>
  static Other convert_scalar(const Scalar& v) {
    if constexpr (std::is_same_v<Other, Scalar>) return v;
    else if constexpr (std::is_same_v<Other, double>) return Traits::to_double(v);
    else static_assert(std::is_same_v<Other, Scalar>, "unsupported conversion");
  }

  GradedOperator& accumulate(const GradedOperator& other, const Scalar& sign) {
    if (!domain_->compatible(*other.domain_) || !codomain_->compatible(*other.codomain_))
      throw std::invalid_argument("cannot add operators on incompatible spaces");
    if (twice_level_shift_ != other.twice_level_shift_ || parity_shift_ != other.parity_shift_)
      throw std::invalid_argument("cannot add operators with different grading");
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      for (const auto& [row, v] : other.columns_[j]) {
        Scalar term = v * sign;
        auto [it, inserted] = columns_[j].try_emplace(row, term);
        if (!inserted) {
          it->second += term;
          if (Traits::is_zero(it->second)) columns_[j].erase(it);
        }
      }
    }
    return *this;
  }

  SpacePtr domain_;
  SpacePtr codomain_;
  int twice_level_shift_;
  int parity_shift_;
  std::vector<Column> columns_;
};

template <class Scalar>
GradedOperator<Scalar> commutator(const GradedOperator<Scalar>& a, const GradedOperator<Scalar>& b) {
  return a * b - b * a;
}

template <class Scalar>
GradedOperator<Scalar> anticommutator(const GradedOperator<Scalar>& a,
                                      const GradedOperator<Scalar>& b) {
  return a * b + b * a;
}

/// Matrix of a single mode on a space; components above the cutoff are dropped.
template <class Scalar>
GradedOperator<Scalar> mode_operator(const SpacePtr& space, const ModeIndex& mode) {
  const int flavor = space->flavor_of(mode);
  const int parity = space->species() == Species::fermion ? 1 : 0;
  GradedOperator<Scalar> op(space, space, -mode.twice_value, parity);
  for (std::size_t j = 0; j < space->dimension(); ++j) {
    auto hit = act_on_basis(space->species(), space->state(j), flavor, mode.twice_value);
    if (!hit) continue;
    auto row = space->find(hit->state);
    if (!row) continue;
    op.add(*row, j, Scalar(hit->coefficient));
  }
  return op;
}

template <class Scalar>
struct ModeApplication {
  std::vector<Scalar> vector;
  bool truncated = false;  // some component left the truncated space
};

/// Acts with a mode on a state vector, flagging components pushed above the cutoff.
template <class Scalar>
ModeApplication<Scalar> apply_mode(const StateSpace& space, const ModeIndex& mode,
                                   std::span<const Scalar> v) {
  if (v.size() != space.dimension()) throw std::invalid_argument("vector dimension mismatch");
  const int flavor = space.flavor_of(mode);
  ModeApplication<Scalar> out{std::vector<Scalar>(space.dimension(), ScalarTraits<Scalar>::zero()),
                              false};
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (ScalarTraits<Scalar>::is_zero(v[j])) continue;
    auto hit = act_on_basis(space.species(), space.state(j), flavor, mode.twice_value);
    if (!hit) continue;
    auto row = space.find(hit->state);
    if (!row) {
      out.truncated = true;
      continue;
    }
    out.vector[*row] += Scalar(hit->coefficient) * v[j];
  }
  return out;
}

template <class Scalar>
std::vector<Scalar> basis_vector(const StateSpace& space, std::size_t index) {
  std::vector<Scalar> v(space.dimension(), ScalarTraits<Scalar>::zero());
  v.at(index) = ScalarTraits<Scalar>::one();
  return v;
}

/// Embeds an operator on one tensor factor into a two-flavor product space.
/// Acting on the right factor picks up the Koszul sign
/// (-1)^(parity_shift * parity of the left factor).
template <class Scalar>
GradedOperator<Scalar> graded_tensor(const GradedOperator<Scalar>& factor_op,
                                     const SpacePtr& product, int factor_position) {
  if (product->flavor_count() != 2 || factor_op.domain().flavor_count() != 1)
    throw std::invalid_argument("graded_tensor expects a one-flavor factor and a two-flavor product");
  if (factor_position != 0 && factor_position != 1)
    throw std::invalid_argument("factor position must be 0 (left) or 1 (right)");
  if (factor_op.domain().species() != product->species())
    throw std::invalid_argument("species mismatch in graded_tensor");
  if (factor_op.domain().twice_cutoff() < product->twice_cutoff())
    throw std::invalid_argument("factor space cutoff below product cutoff");

  const Species species = product->species();
  auto split = [&](const FockState& s, int flavor) {
    std::vector<Occupation> part;
    for (auto o : s.modes_of(flavor)) part.push_back({0, o.twice_mode});
    return FockState(species, std::move(part));
  };

  GradedOperator<Scalar> out(product, product, factor_op.twice_level_shift(), factor_op.parity_shift());
  for (std::size_t j = 0; j < product->dimension(); ++j) {
    const FockState& s = product->state(j);
    FockState left = split(s, 0);
    FockState right = split(s, 1);
    const FockState& acted = factor_position == 0 ? left : right;
    auto col = factor_op.domain().find(acted);
    if (!col) continue;
    const bool flip = factor_position == 1 && factor_op.parity_shift() == 1 && left.parity() == 1;
    for (const auto& [row, value] : factor_op.column(*col)) {
      const FockState& image = factor_op.codomain().state(row);
      std::vector<Occupation> modes;
      const FockState& l = factor_position == 0 ? image : left;
      const FockState& r = factor_position == 0 ? right : image;
      for (auto o : l.modes()) modes.push_back({0, o.twice_mode});
      for (auto o : r.modes()) modes.push_back({1, o.twice_mode});
      auto target = product->find(FockState(species, std::move(modes)));
      if (!target) continue;
      out.add(*target, j, flip ? Scalar(-value) : value);
    }
  }
  return out;
}

/// Graded swap |A>|B> -> (-1)^(|A||B|) |B>|A> on a two-flavor product space.
template <class Scalar>
GradedOperator<Scalar> graded_swap(const SpacePtr& from, const SpacePtr& to) {
  if (from->flavor_count() != 2 || !from->compatible(*to))
    throw std::invalid_argument("graded_swap expects compatible two-flavor spaces");
  GradedOperator<Scalar> out(from, to, 0, 0);
  for (std::size_t j = 0; j < from->dimension(); ++j) {
    const FockState& s = from->state(j);
    auto left = s.modes_of(0);
    auto right = s.modes_of(1);
    std::vector<Occupation> modes;
    for (auto o : right) modes.push_back({0, o.twice_mode});
    for (auto o : left) modes.push_back({1, o.twice_mode});
    FockState swapped(from->species(), std::move(modes));
    const bool odd = from->species() == Species::fermion && (left.size() % 2 == 1) &&
                     (right.size() % 2 == 1);
    out.add(*to->find(swapped), j, odd ? Scalar(-1) : Scalar(1));
  }
  return out;
}

/// Norms <s|s> of the monomial basis under b_s^dagger = b_{-s}, a_n^dagger = a_{-n}.
/// Fermion monomials are orthonormal; a boson monomial prod a_{-n}^{k_n}|0>
/// has norm prod n^{k_n} k_n!.
std::vector<Rational> gram_diagonal(const StateSpace& space);

/// Inverse of a level-preserving operator on a square space, computed block
/// by block on each level subspace. Throws std::domain_error if a block is singular.
template <class Scalar>
GradedOperator<Scalar> invert_level_preserving(const GradedOperator<Scalar>& op);

/// Determinant of each level block of a level-preserving operator, keyed by twice-level.
template <class Scalar>
std::map<int, Scalar> level_block_determinants(const GradedOperator<Scalar>& op);

}  // namespace neqcft::fock
