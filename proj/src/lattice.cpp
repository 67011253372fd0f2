#include "neqcft/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace neqcft::lattice {

namespace {

// Phases i^(a-b) of the gauge D = diag(i^a) split into real and imaginary parts.
int mod4(int d) { return ((d % 4) + 4) % 4; }
double re_phase(int d) { return mod4(d) == 0 ? 1 : mod4(d) == 2 ? -1 : 0; }
double im_phase(int d) { return mod4(d) == 1 ? 1 : mod4(d) == 3 ? -1 : 0; }

struct Spectrum {
  Vector energies;
  Matrix modes;
};

// i A = D S D^dagger with S real symmetric tridiagonal, S_{a,a+1} = -t_a.
Spectrum diagonalize(const std::vector<double>& bonds) {
  const Eigen::Index m = static_cast<Eigen::Index>(bonds.size()) + 1;
  Vector diag = Vector::Zero(m);
  Vector sub(m > 1 ? m - 1 : 0);
  for (Eigen::Index a = 0; a + 1 < m; ++a) sub(a) = -bonds[a];
  Eigen::SelfAdjointEigenSolver<Matrix> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal diagonalization failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double fermi(double omega, double temperature) {
  if (temperature == 0) return omega > 0 ? 0.0 : omega < 0 ? 1.0 : 0.5;
  const double x = omega / temperature;
  if (x > 700) return 0;
  return 1 / (std::exp(x) + 1);
}

}  // namespace

void ChainSpec::validate() const {
  if (sites < 40 || sites % 2 != 0) throw std::invalid_argument("chain needs an even site count N >= 40");
  if (!(coupling > 0)) throw std::invalid_argument("coupling must be positive");
  if (!(defect >= 0 && defect <= 1)) throw std::invalid_argument("defect scale lambda must lie in [0, 1]");
}

std::vector<double> ChainSpec::bonds() const {
  std::vector<double> t(majoranas() - 1, coupling);
  t[defect_bond()] = defect * coupling;
  return t;
}

Matrix hopping(const std::vector<double>& bonds) {
  const Eigen::Index m = static_cast<Eigen::Index>(bonds.size()) + 1;
  Matrix a = Matrix::Zero(m, m);
  for (Eigen::Index j = 0; j + 1 < m; ++j) {
    a(j, j + 1) = bonds[j];
    a(j + 1, j) = -bonds[j];
  }
  return a;
}

Matrix gibbs_covariance(const std::vector<double>& bonds, double temperature) {
  if (!(temperature >= 0)) throw std::invalid_argument("temperature must be nonnegative");
  const auto [eps, v] = diagonalize(bonds);
  Vector occ(eps.size());
  for (Eigen::Index k = 0; k < eps.size(); ++k) {
    if (std::isinf(temperature)) occ(k) = 0;
    else if (temperature == 0) occ(k) = eps(k) > 0 ? 1 : eps(k) < 0 ? -1 : 0;
    else occ(k) = std::tanh(eps(k) / (2 * temperature));
  }
  // Gamma = i tanh(beta i A / 2) = i D tanh(beta S / 2) D^dagger
  Matrix f = v * occ.asDiagonal() * v.transpose();
  Matrix gamma(f.rows(), f.cols());
  for (Eigen::Index a = 0; a < f.rows(); ++a)
    for (Eigen::Index b = 0; b < f.cols(); ++b) gamma(a, b) = -im_phase(static_cast<int>(a - b)) * f(a, b);
  return gamma;
}

Matrix partitioned_covariance(const ChainSpec& spec, double t_left, double t_right) {
  spec.validate();
  const int n = spec.sites;
  std::vector<double> half(n - 1, spec.coupling);
  Matrix gamma = Matrix::Zero(2 * n, 2 * n);
  gamma.topLeftCorner(n, n) = gibbs_covariance(half, t_left);
  gamma.bottomRightCorner(n, n) = gibbs_covariance(half, t_right);
  return gamma;
}

double energy(const Matrix& gamma, const std::vector<double>& bonds) {
  double e = 0;
  for (std::size_t j = 0; j < bonds.size(); ++j) e += 0.5 * bonds[j] * gamma(j, j + 1);
  return e;
}

double bond_current(const Matrix& gamma, const std::vector<double>& bonds, int j) {
  if (j < 1 || j + 1 >= gamma.rows()) throw std::invalid_argument("bond current needs an interior Majorana");
  return -0.5 * bonds[j - 1] * bonds[j] * gamma(j - 1, j + 1);
}

double defect_current(const Matrix& gamma, const ChainSpec& spec) {
  const auto t = spec.bonds();
  const int d = spec.defect_bond();
  return 0.5 * (bond_current(gamma, t, d) + bond_current(gamma, t, d + 1));
}

Propagator::Propagator(const std::vector<double>& bonds) {
  auto s = diagonalize(bonds);
  energies_ = std::move(s.energies);
  modes_ = std::move(s.modes);
}

Matrix Propagator::rotation(double t) const {
  // exp(A t) = D exp(-i S t) D^dagger
  const Vector c = (energies_ * t).array().cos();
  const Vector s = (energies_ * t).array().sin();
  Matrix cs = modes_ * c.asDiagonal() * modes_.transpose();
  Matrix sn = modes_ * s.asDiagonal() * modes_.transpose();
  Matrix r(cs.rows(), cs.cols());
  for (Eigen::Index a = 0; a < r.rows(); ++a)
    for (Eigen::Index b = 0; b < r.cols(); ++b) {
      const int d = static_cast<int>(a - b);
      r(a, b) = re_phase(d) * cs(a, b) + im_phase(d) * sn(a, b);
    }
  return r;
}

Vector Propagator::row(int a, double t) const {
  const Vector va = modes_.row(a).transpose();
  const Vector c = modes_ * (va.array() * (energies_ * t).array().cos()).matrix();
  const Vector s = modes_ * (va.array() * (energies_ * t).array().sin()).matrix();
  Vector r(c.size());
  for (Eigen::Index b = 0; b < r.size(); ++b) {
    const int d = a - static_cast<int>(b);
    r(b) = re_phase(d) * c(b) + im_phase(d) * s(b);
  }
  return r;
}

Matrix Propagator::evolve(const Matrix& gamma, double t) const {
  Matrix r = rotation(t);
  const double defect = (r * r.transpose() - Matrix::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10)
    throw std::runtime_error("propagator is not orthogonal: |R R^T - 1| = " + std::to_string(defect));
  return r * gamma * r.transpose();
}

Vector covariance_spectrum(const Matrix& gamma) {
  Eigen::MatrixXcd h = std::complex<double>(0, 1) * gamma.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("covariance diagonalization failed");
  return solver.eigenvalues();
}

CurrentSeries steady_current(const ChainSpec& spec, double t_left, double t_right, const RunOptions& o) {
  spec.validate();
  if (!(t_left >= 0) || !(t_right >= 0)) throw std::invalid_argument("temperatures must be nonnegative");
  const double scale = spec.sites / spec.max_velocity();
  const double start = o.window_start * scale;
  const double end = o.window_end * scale;
  const double t_max = o.t_max > 0 ? o.t_max : end;
  if (!(o.window_start >= 0 && o.window_end > o.window_start))
    throw std::invalid_argument("empty plateau window");
  if (end > t_max) throw std::invalid_argument("plateau window ends after t_max");
  if (t_max > 0.5 * scale)
    throw std::invalid_argument("t_max exceeds N / (2 v_max): boundary revivals would reach the defect");
  if (o.samples < 2) throw std::invalid_argument("need at least two time samples");

  const auto bonds = spec.bonds();
  const Matrix gamma0 = partitioned_covariance(spec, t_left, t_right);
  const Propagator prop(bonds);
  const int d = spec.defect_bond();

  CurrentSeries out;
  for (int i = 0; i < o.samples; ++i) {
    const double t = t_max * i / (o.samples - 1);
    const Vector r0 = prop.row(d - 1, t);
    const Vector r1 = prop.row(d, t);
    const Vector r2 = prop.row(d + 1, t);
    const Vector r3 = prop.row(d + 2, t);
    const double g02 = r0.dot(gamma0 * r2);
    const double g13 = r1.dot(gamma0 * r3);
    const double in = -0.5 * bonds[d - 1] * bonds[d] * g02;
    const double outflow = -0.5 * bonds[d] * bonds[d + 1] * g13;
    out.times.push_back(t);
    out.values.push_back(0.5 * (in + outflow));
  }

  Plateau& p = out.plateau;
  p.start = start;
  p.end = end;
  std::vector<double> window;
  const double eps = 1e-9 * scale;
  for (std::size_t i = 0; i < out.times.size(); ++i)
    if (out.times[i] >= start - eps && out.times[i] <= end + eps) window.push_back(out.values[i]);
  p.samples = static_cast<int>(window.size());
  if (p.samples < 2) throw std::invalid_argument("plateau window holds fewer than two samples");
  double sum = 0;
  for (double v : window) sum += v;
  p.mean = sum / p.samples;
  double var = 0;
  for (double v : window) var += (v - p.mean) * (v - p.mean);
  p.std_error = std::sqrt(var / (p.samples - 1) / p.samples);
  return out;
}

double transmission(double lambda, double omega, int lead_length, double coupling) {
  using C = std::complex<double>;
  if (!(coupling > 0)) throw std::invalid_argument("coupling must be positive");
  if (!(omega >= 0 && omega < 2 * coupling))
    throw std::domain_error("omega = " + std::to_string(omega) + " is outside the band [0, 2)");
  if (lambda < 0 || lambda > 1) throw std::invalid_argument("defect scale lambda must lie in [0, 1]");
  if (lead_length < 2) throw std::invalid_argument("leads need at least two sites");
  if (lambda == 0) return 0;

  // sites -L..L+1, defect bond (0, 1); E = -2 J cos q
  const double q = std::acos(-omega / (2 * coupling));
  const int lo = -lead_length;
  const int hi = lead_length + 1;
  auto bond = [&](int n) { return n == 0 ? lambda * coupling : coupling; };  // bond (n, n+1)
  auto wave = [&](int n, double k) { return std::exp(C(0, k * n)); };

  C next = wave(hi, q);   // psi_{n+1}
  C here = wave(hi - 1, q);  // psi_n
  for (int n = hi - 1; n > lo; --n) {
    C prev = -(omega * here + bond(n) * next) / bond(n - 1);
    next = here;
    here = prev;
  }
  // psi_lo = here, psi_{lo+1} = next; psi_n = A e^{iqn} + B e^{-iqn}
  const C e0 = wave(lo, q), e1 = wave(lo + 1, q);
  const C f0 = wave(lo, -q), f1 = wave(lo + 1, -q);
  const C det = e0 * f1 - e1 * f0;
  const C incident = (here * f1 - next * f0) / det;
  const C reflected = (e0 * next - e1 * here) / det;
  const double flux = std::norm(incident) - std::norm(reflected) - 1;
  if (std::abs(flux) > 1e-8 * std::norm(incident))
    throw std::runtime_error("transfer matrix lost flux conservation at omega = " + std::to_string(omega));
  return 1 / std::norm(incident);
}

double landauer_current(const std::function<double(double)>& trans, double t_left, double t_right,
                        double band, double relative_error) {
  if (!(t_left >= 0) || !(t_right >= 0)) throw std::invalid_argument("temperatures must be nonnegative");
  if (!(band > 0)) throw std::invalid_argument("band must be positive");
  auto integrand = [&](double w) {
    return w * trans(w) * (fermi(w, t_left) - fermi(w, t_right)) / (2 * std::numbers::pi);
  };
  // the occupations differ only within a few temperatures of zero
  const double hot = std::max(t_left, t_right);
  double split = std::min(band, 60 * hot);
  if (split <= 0) return 0;
  double total = 0;
  double error = 0;
  for (auto [a, b] : {std::pair{0.0, split}, std::pair{split, band}}) {
    if (b <= a) continue;
    double e = 0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, b, 20, relative_error, &e);
    error += e;
  }
  if (error > relative_error * std::abs(total) && error > 1e-15)
    throw std::runtime_error("Landauer quadrature did not converge: error estimate " + std::to_string(error));
  return total;
}

double cft_prediction(double transmission_zero, double t_left, double t_right) {
  return std::numbers::pi * transmission_zero / 24 * (t_left * t_left - t_right * t_right);
}

std::pair<double, double> fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("power-law fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("power-law fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double p = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double a = std::exp((sy - p * sx) / n);
  return {a, p};
}

std::vector<CurrentSeries> sweep(const std::vector<SweepPoint>& points, const RunOptions& options,
                                 unsigned threads) {
  std::vector<CurrentSeries> out(points.size());
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::exception_ptr failure;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < points.size(); i = next++)
        out[i] = steady_current(points[i].spec, points[i].t_left, points[i].t_right, options);
    } catch (...) {
      std::lock_guard lock(guard);
      if (!failure) failure = std::current_exception();
      next = points.size();
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace neqcft::lattice
