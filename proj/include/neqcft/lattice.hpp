#pragma once

// Critical Majorana chain with one rescaled bond: the partitioning protocol in
// covariance-matrix form, the single-particle transmission through the
// defect and the Landauer integral.
//
// Conventions. 2N Majoranas gamma_a with {gamma_a, gamma_b} = 2 delta_ab and
// H = (i/4) sum A_ab gamma_a gamma_b, A_{a,a+1} = t_a = -A_{a+1,a}. The
// covariance is Gamma_ab = (i/2) <[gamma_a, gamma_b]>, real antisymmetric.
// Two Majoranas make one site, so the maximal group velocity is the coupling
// in sites per unit time and the quasiparticle band is [0, 2 coupling].

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace neqcft::lattice {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ChainSpec {
  int sites = 400;        // N
  double coupling = 1;    // uniform bond strength
  double defect = 1;      // lambda, scale of the central bond

  /// Throws std::invalid_argument unless N >= 40 is even, coupling > 0 and 0 <= lambda <= 1.
  void validate() const;
  int majoranas() const { return 2 * sites; }
  /// Index a of the defect bond (a, a+1).
  int defect_bond() const { return sites - 1; }
  /// Bond strengths t_0 ... t_{2N-2} of the coupled chain.
  std::vector<double> bonds() const;
  double max_velocity() const { return coupling; }
};

/// Antisymmetric A of an open chain with the given bonds.
Matrix hopping(const std::vector<double>& bonds);

/// Gibbs covariance of an open chain at temperature T >= 0 (T = 0 is the
/// ground state, T = +inf the maximally mixed state). Throws
/// std::runtime_error if the diagonalization fails.
Matrix gibbs_covariance(const std::vector<double>& bonds, double temperature);

/// Initial state of the protocol: the two decoupled halves at T_l and T_r.
Matrix partitioned_covariance(const ChainSpec& spec, double t_left, double t_right);

/// <H> = (1/4) sum A_ab Gamma_ab.
double energy(const Matrix& gamma, const std::vector<double>& bonds);

/// Energy current through Majorana j, from bond (j-1, j) into bond (j, j+1):
/// -(1/2) t_{j-1} t_j Gamma_{j-1, j+1}. Requires 1 <= j <= 2N-2.
double bond_current(const Matrix& gamma, const std::vector<double>& bonds, int j);

/// Mean of the currents into and out of the defect bond.
double defect_current(const Matrix& gamma, const ChainSpec& spec);

/// Orthogonal one-particle propagator R(t) = exp(A t), gamma(t) = R gamma.
class Propagator {
 public:
  explicit Propagator(const std::vector<double>& bonds);

  std::size_t size() const { return static_cast<std::size_t>(energies_.size()); }
  /// Full R(t).
  Matrix rotation(double t) const;
  /// Row a of R(t).
  Vector row(int a, double t) const;
  /// R Gamma R^T; throws std::runtime_error if R is not orthogonal to 1e-10.
  Matrix evolve(const Matrix& gamma, double t) const;

 private:
  Vector energies_;  // spectrum of the gauge-transformed real hopping matrix
  Matrix modes_;
};

/// Spectrum of i Gamma (all in [-1, 1] for a physical state).
Vector covariance_spectrum(const Matrix& gamma);

struct Plateau {
  double start = 0;
  double end = 0;
  double mean = 0;
  double std_error = 0;
  int samples = 0;
};

struct CurrentSeries {
  std::vector<double> times;
  std::vector<double> values;
  Plateau plateau;
};

struct RunOptions {
  double t_max = 0;           // <= 0: window end
  int samples = 81;           // time points on [0, t_max]
  double window_start = 0.25; // in units of N / v_max
  double window_end = 0.45;
};

/// Runs the protocol and averages the defect current over the plateau
/// window. Throws std::invalid_argument for a window that is empty, reaches
/// past t_max, or t_max beyond N / (2 v_max) where boundary reflections start.
CurrentSeries steady_current(const ChainSpec& spec, double t_left, double t_right,
                             const RunOptions& options = {});

/// Transmission probability at quasiparticle energy omega in [0, 2 coupling)
/// through a central bond of strength lambda * coupling, from a transfer
/// matrix sweep over leads of the given length. Throws std::domain_error
/// outside the band.
double transmission(double lambda, double omega, int lead_length = 400, double coupling = 1);

/// (1/2 pi) int_0^band omega T(omega) [f_l(omega) - f_r(omega)] d omega by
/// adaptive Gauss-Kronrod quadrature; throws std::runtime_error if the
/// requested relative error is not reached.
double landauer_current(const std::function<double(double)>& transmission, double t_left,
                        double t_right, double band = 2, double relative_error = 1e-8);

/// (pi T0 / 24) (Tl^2 - Tr^2).
double cft_prediction(double transmission_zero, double t_left, double t_right);

/// Least-squares fit y = a x^p in log-log space; returns (a, p).
std::pair<double, double> fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

struct SweepPoint {
  ChainSpec spec;
  double t_left = 0;
  double t_right = 0;
};

/// Runs independent points on up to `threads` worker threads; results are in
/// input order and do not depend on the thread count.
std::vector<CurrentSeries> sweep(const std::vector<SweepPoint>& points, const RunOptions& options,
                                 unsigned threads = 1);

}  // namespace neqcft::lattice
