#pragma once

// Truncated chiral Fock spaces for Neveu-Schwarz Majorana fermions and
// zero-charge u(1) bosons.
//
// Mode numbers are stored doubled ("twice" values) so that half-odd fermion
// modes and integer boson modes share one exact integer representation.
// A basis state is a product of creation modes applied to the vacuum, kept in
// canonical order: flavor ascending, then mode value ascending (the most
// negative mode leftmost), e.g. b_{-3/2} b_{-1/2}|0>. Fermion signs are fixed
// by counting transpositions against this order.

#include "neqcft/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace neqcft::fock {

using neqcft::to_string;

enum class Species { fermion, boson };
enum class Side { left, right };
enum class Chirality { chiral, anti_chiral };

std::string to_string(Species s);
std::string to_string(Side s);
std::string to_string(Chirality c);
Species parse_species(const std::string& name);

/// A single mode b_s (fermion, s in Z+1/2) or a_n (boson, n in Z\{0}).
struct ModeIndex {
  Species species = Species::fermion;
  Side side = Side::right;
  Chirality chirality = Chirality::chiral;
  int twice_value = -1;

  static ModeIndex fermion(const Rational& s, Side side = Side::right,
                           Chirality chirality = Chirality::chiral);
  static ModeIndex boson(int n, Side side = Side::right,
                         Chirality chirality = Chirality::chiral);

  Rational value() const { return make_rational(twice_value, 2); }
  bool is_creation() const { return twice_value < 0; }
  /// Adjoint mode under b_s^dagger = b_{-s} (a_n^dagger = a_{-n}).
  ModeIndex adjoint() const;
  std::string label() const;
};

struct Flavor {
  Side side = Side::right;
  Chirality chirality = Chirality::chiral;
  auto operator<=>(const Flavor&) const = default;
};

struct Occupation {
  int flavor = 0;
  int twice_mode = -1;  // always negative: occupied creation mode
  auto operator<=>(const Occupation&) const = default;
};

class FockState {
 public:
  FockState() = default;
  /// Takes creation modes in canonical order; throws std::invalid_argument
  /// if the list is not canonical or repeats a fermion mode.
  FockState(Species species, std::vector<Occupation> modes);

  std::span<const Occupation> modes() const { return modes_; }
  int twice_level() const { return twice_level_; }
  Rational level() const { return make_rational(twice_level_, 2); }
  /// Fermion number mod 2; always 0 for bosons.
  int parity() const { return parity_; }
  bool is_vacuum() const { return modes_.empty(); }

  /// Modes belonging to one flavor, in canonical order.
  std::vector<Occupation> modes_of(int flavor) const;

  std::string label(std::span<const std::string> flavor_names = {}) const;

  auto operator<=>(const FockState& other) const { return modes_ <=> other.modes_; }
  bool operator==(const FockState& other) const { return modes_ == other.modes_; }

 private:
  std::vector<Occupation> modes_;
  int twice_level_ = 0;
  int parity_ = 0;
};

/// Result of acting with one mode on a basis state: the new state and an
/// integer coefficient (a fermion sign, or n*k for a boson annihilator).
struct BasisAction {
  FockState state;
  long coefficient = 1;
};

std::optional<BasisAction> act_on_basis(Species species, const FockState& state,
                                        int flavor, int twice_mode);

/// Enumerated truncated state space: all canonical states with level <= cutoff,
/// ordered by level and then lexicographically.
class StateSpace {
 public:
  StateSpace(Species species, const Rational& cutoff, std::vector<Flavor> flavors);

  Species species() const { return species_; }
  const Rational& cutoff() const { return cutoff_; }
  int twice_cutoff() const { return twice_cutoff_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t flavor_count() const { return flavors_.size(); }
  std::span<const Flavor> flavors() const { return flavors_; }
  const std::vector<FockState>& basis() const { return basis_; }
  const FockState& state(std::size_t i) const { return basis_.at(i); }
  std::optional<std::size_t> find(const FockState& state) const;
  std::size_t vacuum_index() const { return 0; }

  /// Flavor slot holding modes with this side/chirality; throws if absent or
  /// if the species does not match.
  int flavor_of(const ModeIndex& mode) const;
  int flavor_index(Side side, Chirality chirality) const;

  /// Same species, cutoff and flavor count: basis orderings coincide, so
  /// operators may be composed across the two spaces.
  bool compatible(const StateSpace& other) const;

  std::string describe() const;

 private:
  Species species_;
  Rational cutoff_;
  int twice_cutoff_;
  std::vector<Flavor> flavors_;
  std::vector<FockState> basis_;
  std::map<FockState, std::size_t> index_;
};

using SpacePtr = std::shared_ptr<const StateSpace>;

/// Single-flavor chiral space (right side, chiral) of one species.
SpacePtr enumerate_basis(Species species, const Rational& cutoff);
SpacePtr make_space(Species species, const Rational& cutoff, std::vector<Flavor> flavors);

/// Independent count of the dimension from the level-generating function
/// prod (1+q^s) (fermions) or prod 1/(1-q^n) (bosons), flavors multiplied.
std::size_t generating_function_dimension(Species species, const Rational& cutoff,
                                          std::size_t flavors = 1);

}  // namespace neqcft::fock
