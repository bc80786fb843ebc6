#pragma once

// Minimization of the tomographic entropy S(U) = H(diag(U^dagger rho U)) over U(n).
//
// The search runs on the exponential chart U = U0 exp(iH(x)), x in R^{n^2}, and
// re-centres U0 at the best point after each phase so that x stays small.
// Each restart does Nelder-Mead descent followed by BFGS with central-difference
// gradients. Convergence is judged on the objective value only: the minimizing
// set is a manifold whenever the spectrum is degenerate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spintomo/entropy.hpp"
#include "spintomo/errors.hpp"
#include "spintomo/linalg.hpp"
#include "spintomo/quantum_state.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo {

/// exp(iH) for Hermitian H via its eigendecomposition.
inline ComplexMatrix exp_i_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const RealVector& w = es.eigenvalues();
  ComplexVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, w(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// n^2 real coordinates of a Hermitian generator: n diagonal entries, then
/// (re, im) of each upper off-diagonal entry in row-major order.
class UnitaryParametrization {
 public:
  explicit UnitaryParametrization(int n) : n_(n), params_(static_cast<std::size_t>(n) * n, 0.0) {
    if (n < 1) throw invalid_argument("unitary dimension must be at least 1");
  }
  UnitaryParametrization(int n, std::vector<double> params) : n_(n), params_(std::move(params)) {
    if (n < 1) throw invalid_argument("unitary dimension must be at least 1");
    if (params_.size() != static_cast<std::size_t>(n) * n)
      throw dimension_mismatch("U(n) chart needs n^2 = " + std::to_string(n * n) + " parameters");
  }

  /// Generator with independent N(0, scale^2) coordinates.
  template <typename Engine>
  static UnitaryParametrization random(int n, Engine& engine, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    std::vector<double> p(static_cast<std::size_t>(n) * n);
    for (double& x : p) x = normal(engine);
    return {n, std::move(p)};
  }

  int n() const { return n_; }
  std::size_t size() const { return params_.size(); }
  const std::vector<double>& params() const { return params_; }

  ComplexMatrix generator() const { return generator_from(n_, params_.data()); }
  ComplexMatrix unitary() const { return exp_i_hermitian(generator()); }

  static ComplexMatrix generator_from(int n, const double* x) {
    ComplexMatrix h(n, n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) h(i, i) = x[k++];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        h(i, j) = complex(x[k], x[k + 1]);
        h(j, i) = complex(x[k], -x[k + 1]);
        k += 2;
      }
    return h;
  }

 private:
  int n_;
  std::vector<double> params_;
};

namespace detail {

// Shannon entropy of diag(W^dagger rho W).
inline double frame_entropy(const ComplexMatrix& rho, const ComplexMatrix& w) {
  double s = 0.0;
  for (Eigen::Index m = 0; m < w.cols(); ++m) {
    const double p = (w.col(m).adjoint() * rho * w.col(m))(0, 0).real();
    s += entropy_term(p);
  }
  return s;
}

}  // namespace detail

/// S(exp(iH)) for the generator encoded by `params`.
inline double entropy_objective(const DensityMatrix& rho, const UnitaryParametrization& params) {
  if (params.n() != rho.dim())
    throw dimension_mismatch("entropy_objective: chart dimension differs from the state");
  return tomographic_entropy(unitary_tomogram(rho, UnitaryFrame::from_matrix(params.unitary(), 1e-10)));
}

/// Frame measuring rho in its eigenbasis (descending eigenvalues) and S_N.
struct AnalyticMinimum {
  UnitaryFrame frame;
  double entropy;
};

inline AnalyticMinimum analytic_minimum(const DensityMatrix& rho) {
  const Eigensystem es = eigensystem(rho);
  return {UnitaryFrame::from_matrix(es.vectors, 1e-10), von_neumann_entropy(rho)};
}

struct MinimizerConfig {
  int restarts = 8;
  int max_iters = 5000;  // per restart, Nelder-Mead plus BFGS iterations
  double tol = 1e-7;     // accepted gap above S_N
  std::uint64_t seed = 0;
};

struct MinimizationResult {
  UnitaryFrame best_frame = UnitaryFrame::identity(1);
  double best_entropy = 0.0;
  double von_neumann = 0.0;
  double entropy_gap = 0.0;  // best_entropy - von_neumann
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
  std::vector<double> trace;  // best objective after each phase, all restarts
};

namespace detail {

class ChartObjective {
 public:
  ChartObjective(const ComplexMatrix& rho, ComplexMatrix base) : rho_(rho), base_(std::move(base)) {}

  int n() const { return static_cast<int>(base_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(n()) * n(); }
  const ComplexMatrix& base() const { return base_; }

  ComplexMatrix frame(const std::vector<double>& x) const {
    return base_ * exp_i_hermitian(UnitaryParametrization::generator_from(n(), x.data()));
  }
  double operator()(const std::vector<double>& x) const { return frame_entropy(rho_, frame(x)); }

  void recentre(const std::vector<double>& x) { base_ = frame(x); }

 private:
  const ComplexMatrix& rho_;
  ComplexMatrix base_;
};

struct PhaseOutcome {
  std::vector<double> x;
  double value;
  int iterations;
};

// Adaptive Nelder-Mead (dimension-dependent coefficients).
inline PhaseOutcome nelder_mead(const ChartObjective& f, double step, int budget, double floor) {
  const std::size_t d = f.dim();
  const double dd = static_cast<double>(d);
  const double reflect = 1.0, expand = 1.0 + 2.0 / dd;
  const double contract = 0.75 - 1.0 / (2.0 * dd), shrink = 1.0 - 1.0 / dd;

  std::vector<std::vector<double>> simplex(d + 1, std::vector<double>(d, 0.0));
  std::vector<double> values(d + 1);
  for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] = step;
  for (std::size_t i = 0; i <= d; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(d + 1);
  int it = 0;
  for (; it < budget; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];
    if (values[best] <= floor || values[worst] - values[best] <= 1e-15) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k] / dd;
    auto along = [&](double t) {
      std::vector<double> p(d);
      for (std::size_t k = 0; k < d; ++k) p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
      return p;
    };

    std::vector<double> xr = along(-reflect);
    const double fr = f(xr);
    if (fr < values[best]) {
      std::vector<double> xe = along(-reflect * expand);
      const double fe = f(xe);
      if (fe < fr) {
        simplex[worst] = std::move(xe);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(xr);
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = std::move(xr);
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    std::vector<double> xc = along(outside ? -reflect * contract : contract);
    const double fc = f(xc);
    if (fc < (outside ? fr : values[worst])) {
      simplex[worst] = std::move(xc);
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < d; ++k)
        simplex[i][k] = simplex[best][k] + shrink * (simplex[i][k] - simplex[best][k]);
      values[i] = f(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], it};
}

inline constexpr double fd_relative_step = 1e-6;

inline std::vector<double> central_gradient(const ChartObjective& f, const std::vector<double>& x) {
  std::vector<double> g(x.size());
  std::vector<double> probe = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double h = fd_relative_step * std::max(1.0, std::abs(x[k]));
    probe[k] = x[k] + h;
    const double up = f(probe);
    probe[k] = x[k] - h;
    const double down = f(probe);
    probe[k] = x[k];
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

// BFGS with backtracking Armijo line search, starting at x = 0.
inline PhaseOutcome bfgs(const ChartObjective& f, int budget, double floor) {
  const std::size_t d = f.dim();
  std::vector<double> x(d, 0.0);
  double fx = f(x);
  std::vector<double> g = central_gradient(f, x);
  RealMatrix inv_hessian = RealMatrix::Identity(d, d);
  int it = 0;
  for (; it < budget && fx > floor; ++it) {
    const Eigen::Map<const RealVector> gv(g.data(), d);
    if (gv.lpNorm<Eigen::Infinity>() < 1e-11) break;
    RealVector dir = -inv_hessian * gv;
    double slope = gv.dot(dir);
    if (!(slope < 0.0)) {
      inv_hessian.setIdentity();
      dir = -gv;
      slope = gv.dot(dir);
    }
    // Keep the chart step well inside the injectivity radius.
    double t = std::min(1.0, 1.0 / std::max(1e-300, dir.lpNorm<Eigen::Infinity>()));
    std::vector<double> trial(d);
    double ft = fx;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      for (std::size_t k = 0; k < d; ++k) trial[k] = x[k] + t * dir(k);
      ft = f(trial);
      if (ft <= fx + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    std::vector<double> g_new = central_gradient(f, trial);
    RealVector s(d), y(d);
    for (std::size_t k = 0; k < d; ++k) {
      s(k) = trial[k] - x[k];
      y(k) = g_new[k] - g[k];
    }
    const double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm() && sy > 0.0) {
      const double rho = 1.0 / sy;
      const RealMatrix eye = RealMatrix::Identity(d, d);
      inv_hessian = (eye - rho * s * y.transpose()) * inv_hessian * (eye - rho * y * s.transpose()) +
                    rho * s * s.transpose();
    }
    const double improvement = fx - ft;
    x = std::move(trial);
    fx = ft;
    g = std::move(g_new);
    if (improvement <= 1e-16 * std::max(1.0, std::abs(fx))) break;
  }
  return {x, fx, it};
}

}  // namespace detail

/// Multi-start search for min_U S(U). The spectrum-based S_N is the exact
/// reference: a restart stops as soon as its best value is within config.tol.
/// Non-convergence is reported through `converged`, not thrown.
inline MinimizationResult minimize(const DensityMatrix& rho, const MinimizerConfig& config) {
  if (config.restarts < 1) throw invalid_argument("restarts must be at least 1");
  if (config.max_iters < 1) throw invalid_argument("max_iters must be at least 1");
  if (!(config.tol > 0.0)) throw invalid_argument("tolerance must be positive");
  const int n = rho.dim();
  const double target = von_neumann_entropy(rho);
  const double floor = target + config.tol;

  MinimizationResult result;
  result.von_neumann = target;
  result.best_entropy = std::numeric_limits<double>::infinity();

  ComplexMatrix best_frame = ComplexMatrix::Identity(n, n);
  for (int r = 0; r < config.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(config.seed >> 32), static_cast<std::uint32_t>(r)};
    std::mt19937_64 engine(seq);
    ComplexMatrix start = ComplexMatrix::Identity(n, n);
    if (r > 0) start = UnitaryParametrization::random(n, engine).unitary();

    detail::ChartObjective f(rho.matrix(), start);
    const std::vector<double> origin(f.dim(), 0.0);
    double value = f(origin);
    result.trace.push_back(value);
    int used = 0;
    double step = 0.5;
    while (value > floor && used < config.max_iters) {
      const double before = value;
      auto nm = detail::nelder_mead(f, step, std::min(config.max_iters - used, 100 * static_cast<int>(f.dim())), floor);
      used += nm.iterations;
      if (nm.value < value) {
        f.recentre(nm.x);
        value = nm.value;
      }
      result.trace.push_back(value);
      if (value <= floor || used >= config.max_iters) break;
      auto polish = detail::bfgs(f, std::min(config.max_iters - used, 500), floor);
      used += std::max(polish.iterations, 1);
      if (polish.value < value) {
        f.recentre(polish.x);
        value = polish.value;
      }
      result.trace.push_back(value);
      if (before - value <= 1e-14) break;
      step = 0.05;
    }
    result.iterations += used;
    result.restarts_used = r + 1;
    if (value < result.best_entropy) {
      result.best_entropy = value;
      best_frame = f.base();
    }
    if (result.best_entropy <= floor) break;
  }

  // Re-orthonormalize accumulated rounding in the chart products.
  Eigen::HouseholderQR<ComplexMatrix> qr(best_frame);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix rdiag = q.adjoint() * best_frame;
  for (int k = 0; k < n; ++k) {
    const complex z = rdiag(k, k);
    if (std::abs(z) > 0.0) q.col(k) *= z / std::abs(z);
  }
  result.best_frame = UnitaryFrame::from_matrix(q, 1e-10);
  result.best_entropy = tomographic_entropy(unitary_tomogram(rho, result.best_frame));
  result.entropy_gap = result.best_entropy - target;
  result.converged = result.entropy_gap <= config.tol;
  return result;
}

struct LandscapeSample {
  std::uint64_t frame_hash;  // FNV-1a of the generator coordinates
  double entropy;
};

struct LandscapeScan {
  std::vector<LandscapeSample> samples;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double von_neumann = 0.0;
  bool above_bound = true;  // every sample >= S_N - 1e-10
};

inline std::uint64_t fnv1a(const std::vector<double>& values) {
  std::uint64_t h = 14695981039346656037ull;
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
  return h;
}

inline constexpr double lower_bound_slack = 1e-10;

/// S(U) at random frames exp(iH), H with standard Gaussian coordinates.
inline LandscapeScan entropy_landscape_scan(const DensityMatrix& rho, int samples, std::uint64_t seed) {
  if (samples < 1) throw invalid_argument("samples must be at least 1");
  std::mt19937_64 engine(seed);
  LandscapeScan scan;
  scan.von_neumann = von_neumann_entropy(rho);
  scan.samples.reserve(samples);
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto params = UnitaryParametrization::random(rho.dim(), engine);
    const double e = detail::frame_entropy(rho.matrix(), params.unitary());
    scan.samples.push_back({fnv1a(params.params()), e});
    total += e;
    if (s == 0 || e < scan.min) scan.min = e;
    if (s == 0 || e > scan.max) scan.max = e;
    if (e < scan.von_neumann - lower_bound_slack) scan.above_bound = false;
  }
  scan.mean = total / samples;
  return scan;
}

}  // namespace spintomo
