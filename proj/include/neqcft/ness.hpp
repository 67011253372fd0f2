#pragma once

// Symbolic field expressions for the partitioning protocol: chiral time
// evolution through the impurity, the S-matrix S = Theta_0^-1 Theta, Gibbs
// expectations and the steady energy current.
//
// Fields live at positions a*x + b*t with x > 0 a symbol. A Majorana
// stress tensor is the bilinear T = -(i/2) dpsi psi (chiral) or
// Tbar = +(i/2) dpsibar psibar (anti-chiral); expressions are expanded into
// fermions before Theta acts and recollected afterwards.

#include "neqcft/fock.hpp"
#include "neqcft/rational.hpp"
#include "neqcft/symbolic.hpp"

#include <map>
#include <string>
#include <vector>

namespace neqcft::ness {

using fock::Chirality;
using fock::Side;
using symbolic::QPoly;
using Rules = symbolic::RewriteSystem<Rational>;

/// i^2 -> -1 and cos^2 -> 1 - sin^2.
const Rules& standard_rules();

struct Position {
  Rational x;  // coefficient of x
  Rational t;  // coefficient of t
  std::string label() const;
  bool operator==(const Position& o) const { return x == o.x && t == o.t; }
  bool operator<(const Position& o) const { return x < o.x || (x == o.x && t < o.t); }
};

/// t < x (fields have not reached the impurity) or t > x (they have crossed it).
enum class Regime { before_crossing, after_crossing };

/// Sign of a*x + b*t for 0 < t < x or 0 < x < t; throws std::invalid_argument
/// when the sign is not fixed by the regime.
int sign_in(const Position& p, Regime regime);

enum class FieldKind { fermion, stress };

struct LocalField {
  FieldKind kind = FieldKind::fermion;
  std::string species = "psi";
  Chirality chirality = Chirality::chiral;
  Side side = Side::right;
  int derivative = 0;
  Position position;

  std::string label() const;
  bool is_fermion() const { return kind == FieldKind::fermion; }
  bool operator==(const LocalField& o) const;
  bool operator<(const LocalField& o) const;
};

LocalField fermion(const std::string& species, Chirality chirality, Side side, Position position,
                   int derivative = 0);
LocalField stress(const std::string& species, Chirality chirality, Side side, Position position);

/// Formal linear combination of ordered products of local fields. Products are
/// kept in canonical order (position, side, chirality, species, descending
/// derivative); reordering fermions costs a sign and a repeated fermion
/// factor kills the product.
class FieldExpression {
 public:
  using Product = std::vector<LocalField>;

  FieldExpression() = default;
  static FieldExpression identity();
  static FieldExpression constant(const QPoly& c);
  static FieldExpression of(const LocalField& f);

  const std::map<Product, QPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  QPoly coefficient(const Product& p) const;

  void add_product(Product factors, const QPoly& coefficient);

  FieldExpression& operator+=(const FieldExpression& o);
  FieldExpression& operator-=(const FieldExpression& o);
  friend FieldExpression operator+(FieldExpression a, const FieldExpression& b) { return a += b; }
  friend FieldExpression operator-(FieldExpression a, const FieldExpression& b) { return a -= b; }
  friend FieldExpression operator*(const FieldExpression& a, const FieldExpression& b);
  friend FieldExpression operator*(const QPoly& c, const FieldExpression& e);

  /// Normalizes every coefficient and drops vanishing terms.
  FieldExpression simplified(const Rules& rules = standard_rules()) const;
  bool equals(const FieldExpression& o, const Rules& rules = standard_rules()) const;

  std::string to_string() const;

 private:
  std::map<Product, QPoly> terms_;
};

/// Replaces stress tensors by fermion bilinears.
FieldExpression expand_stress(const FieldExpression& e);
/// Rewrites coincident dpsi psi pairs back into stress tensors.
FieldExpression collect_stress(const FieldExpression& e);

struct FieldKey {
  std::string species;
  Chirality chirality;
  bool operator<(const FieldKey& o) const {
    return species < o.species || (species == o.species && chirality < o.chirality);
  }
  bool operator==(const FieldKey& o) const { return species == o.species && chirality == o.chirality; }
};

struct Image {
  QPoly coefficient;
  FieldKey field;
};

/// Linear action of a dual defect map on single fermion fields. Incoming keys
/// are chiral fields from the right and anti-chiral fields from the left;
/// outgoing chiral fields land on the left and anti-chiral ones on the right.
struct DefectRules {
  std::string name;
  std::map<FieldKey, std::vector<Image>> images;
};

/// Theta(alpha) for one Majorana species: psi^r -> c psi^l + s psibar^r,
/// psibar^l -> c psibar^r - s psi^l.
DefectRules fermion_rules(const QPoly& cos_alpha, const QPoly& sin_alpha, const std::string& species = "psi");
/// Same with the symbols cos, sin.
DefectRules symbolic_fermion_rules();

/// Inverse map via the adjugate; throws std::domain_error unless the
/// determinant normalizes to a nonzero rational.
DefectRules invert(const DefectRules& rules, const Rules& rewrite = standard_rules());

/// One chiral sector: a species on one side with its central charge.
struct Sector {
  std::string species;
  Side side;
  Rational central_charge;
};

struct Model {
  std::vector<Sector> sectors;
  DefectRules theta;
  DefectRules theta0;
  Rules rewrite = standard_rules();

  const Sector& sector(const std::string& species, Side side) const;
};

/// Free Majorana fermion on both sides with symbolic angle.
Model fermion_model();
/// Same with a fixed (cos, sin) pair.
Model fermion_model(const QPoly& cos_alpha, const QPoly& sin_alpha);

/// Heisenberg evolution of fields placed at +-x; throws std::invalid_argument
/// outside the symmetric configuration.
FieldExpression evolve(const FieldExpression& e, const DefectRules& theta, Regime regime,
                       const Rules& rewrite = standard_rules());

FieldExpression apply_smatrix(const FieldExpression& e, const DefectRules& theta,
                              const DefectRules& theta0, const Rules& rewrite = standard_rules());

/// Gibbs expectation with <T> = (pi c / 12) T_side^2, in the symbols pi, Tl, Tr.
/// Throws std::invalid_argument for products outside the supported class.
QPoly expectation(const FieldExpression& e, const Model& model);

/// Sum over the sectors on one side of T - Tbar at the given position.
FieldExpression momentum_density(const Model& model, Side side, const Position& at);

/// <S[T(x) - Tbar(x)]> evaluated with the fields placed at x > 0 (side right) or x < 0 (side left).
QPoly energy_current(const Model& model, Side side = Side::right);

/// (pi c / 24) cos^2 (Tl^2 - Tr^2) written in the symbols cos, pi, Tl, Tr.
QPoly fermion_current_formula(const QPoly& cos_alpha);

/// (1/Tr - 1/Tl) J; requires positive temperatures.
double entropy_production(double current, double t_left, double t_right);

struct ContinuityReport {
  Regime regime;
  FieldExpression lhs;  // evolved T(x) + Tbar(-x)
  FieldExpression rhs;  // T(x - t) + Tbar(-x + t)
  FieldExpression residual;
  bool holds = false;
};

ContinuityReport check_global_continuity(const Model& model, Regime regime);

}  // namespace neqcft::ness
