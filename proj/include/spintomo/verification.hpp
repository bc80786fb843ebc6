#pragma once

// Executable property suite: normalization, psi-independence, reconstruction
// round trip, frame consistency, classical identities, marginal consistency,
// minimum principle, scalar anchors and the dual mutual-information identity.
// Every check uses fixed seeds, so a run is reproducible bit for bit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spintomo/entropy.hpp"
#include "spintomo/quadrature.hpp"
#include "spintomo/quantum_state.hpp"
#include "spintomo/tomography.hpp"
#include "spintomo/unitary_minimizer.hpp"

namespace spintomo::verification {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed deviation
  double threshold = 0.0;  // allowed deviation
  double seconds = 0.0;
  std::string detail;
};

namespace detail {

using Engine = std::mt19937_64;

inline EulerAngles random_angles(Engine& e) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double phi = two_pi * unit(e);
  const double theta = std::acos(std::clamp(1.0 - 2.0 * unit(e), -1.0, 1.0));
  const double psi = two_pi * unit(e);
  return {phi, theta, psi};
}

inline UnitaryFrame random_frame(int n, Engine& e) {
  return UnitaryFrame::from_matrix(UnitaryParametrization::random(n, e).unitary(), 1e-10);
}

inline DensityMatrix random_state(int n, Engine& e) {
  std::uniform_int_distribution<int> rank(1, n);
  return random_density(n, rank(e), e());
}

// Random joint table with occasional exact zeros.
inline RealMatrix random_joint(Engine& e) {
  std::uniform_int_distribution<int> size(2, 4);
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution zero(0.15);
  RealMatrix p(size(e), size(e));
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) p(i, j) = zero(e) ? 0.0 : expo(e);
  if (p.sum() == 0.0) p(0, 0) = 1.0;
  return p / p.sum();
}

inline double sum_deviation(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p) s += x;
  return std::abs(s - 1.0);
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline DensityMatrix bell_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return from_pure(PureState::from_amplitudes(v));
}

class Tracker {
 public:
  Tracker(int id, std::string name, double threshold) : start_(std::chrono::steady_clock::now()) {
    r_.id = id;
    r_.name = std::move(name);
    r_.threshold = threshold;
  }
  void observe(double deviation) {
    if (!(deviation <= r_.worst)) r_.worst = std::isnan(deviation) ? INFINITY : deviation;
  }
  void fail(const std::string& why) {
    failed_ = true;
    if (r_.detail.empty()) r_.detail = why;
  }
  CriterionResult finish(const std::string& detail = {}) {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    r_.passed = !failed_ && r_.worst <= r_.threshold;
    if (r_.detail.empty()) r_.detail = detail;
    return r_;
  }

 private:
  CriterionResult r_;
  bool failed_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

/// 1. Every tomogram sums to 1 (single spin: sphere and unitary; two spins: local and unitary).
inline CriterionResult normalization(std::uint64_t seed) {
  detail::Engine e(seed);
  detail::Tracker t(1, "normalization", 1e-10);
  std::uniform_int_distribution<int> single(1, 5), pair(1, 3);
  for (int s = 0; s < 50; ++s) {
    const HalfInteger j = HalfInteger::from_twice(single(e));
    const DensityMatrix rho = detail::random_state(multiplicity(j), e);
    t.observe(detail::sum_deviation(spin_tomogram(rho, j, detail::random_angles(e)).probabilities));
    t.observe(detail::sum_deviation(unitary_tomogram(rho, detail::random_frame(rho.dim(), e)).probabilities));

    const HalfInteger jj = HalfInteger::from_twice(pair(e));
    const BipartiteShape shape(jj, jj);
    const DensityMatrix rho2 = detail::random_state(shape.dim(), e);
    t.observe(std::abs(two_spin_tomogram(rho2, shape, detail::random_angles(e), detail::random_angles(e)).sum() - 1.0));
    t.observe(std::abs(two_spin_unitary_tomogram(rho2, shape, detail::random_frame(shape.dim(), e)).sum() - 1.0));
  }
  return t.finish("50 states x 4 tomogram kinds");
}

/// 2. diag(D^dagger rho D) does not change with psi.
inline CriterionResult psi_independence(std::uint64_t seed) {
  detail::Engine e(seed);
  detail::Tracker t(2, "psi-independence", 1e-12);
  std::uniform_int_distribution<int> spin(1, 5);
  for (int s = 0; s < 50; ++s) {
    const HalfInteger j = HalfInteger::from_twice(spin(e));
    const DensityMatrix rho = detail::random_state(multiplicity(j), e);
    const EulerAngles a = detail::random_angles(e);
    const auto reference = spin_tomogram(rho, j, a).probabilities;
    for (double psi : {0.0, 1.0, 2.0, pi}) {
      const auto rotated = unitary_tomogram(rho, UnitaryFrame::rotation(j, a.with_psi(psi)));
      t.observe(detail::max_diff(reference, rotated.probabilities));
    }
  }
  return t.finish("50 states, psi in {0, 1, 2, pi}");
}

/// 3. rho -> sphere tomogram -> group integral -> rho, band limit 4j.
inline CriterionResult reconstruction_round_trip(std::uint64_t seed, double time_budget_seconds = 30.0) {
  detail::Engine e(seed);
  detail::Tracker t(3, "reconstruction round-trip", 1e-8);
  for (int tj = 1; tj <= 4; ++tj) {
    const HalfInteger j = HalfInteger::from_twice(tj);
    const GroupQuadrature quad = quadrature_grid(2 * tj);
    for (int s = 0; s < 20; ++s) {
      const DensityMatrix rho = random_density(multiplicity(j), multiplicity(j), e());
      const ComplexMatrix back = reconstruct_matrix(tomogram_of(rho, j), j, quad);
      t.observe(max_abs(back - rho.matrix()));
    }
  }
  CriterionResult r = t.finish("20 states at each j in {1/2, 1, 3/2, 2}");
  if (r.seconds > time_budget_seconds) {
    r.passed = false;
    r.detail = "runtime " + std::to_string(r.seconds) + " s exceeds " + std::to_string(time_budget_seconds) + " s";
  }
  return r;
}

/// 4. Unitary tomogram at D(u) (resp. D (x) D) equals the sphere tomogram.
inline CriterionResult frame_consistency(std::uint64_t seed) {
  detail::Engine e(seed);
  detail::Tracker t(4, "frame consistency", 1e-12);
  std::uniform_int_distribution<int> single(1, 5), pair(1, 3);
  for (int s = 0; s < 50; ++s) {
    const HalfInteger j = HalfInteger::from_twice(single(e));
    const DensityMatrix rho = detail::random_state(multiplicity(j), e);
    const EulerAngles a = detail::random_angles(e);
    t.observe(detail::max_diff(unitary_tomogram(rho, UnitaryFrame::rotation(j, a)).probabilities,
                               spin_tomogram(rho, j, a).probabilities));

    const HalfInteger jj = HalfInteger::from_twice(pair(e));
    const BipartiteShape shape(jj, jj);
    const DensityMatrix rho2 = detail::random_state(shape.dim(), e);
    const EulerAngles a1 = detail::random_angles(e), a2 = detail::random_angles(e);
    const JointTomogram local = two_spin_tomogram(rho2, shape, a1, a2);
    const JointTomogram unitary =
        two_spin_unitary_tomogram(rho2, shape, UnitaryFrame::local_rotation(shape, a1, a2));
    t.observe(max_abs(local.probabilities - unitary.probabilities));
  }
  return t.finish("50 single-spin and 50 two-spin cases");
}

/// 5. Chain rule, subadditivity, symmetry, non-negativity; independence gives I = 0.
inline CriterionResult classical_identities(std::uint64_t seed) {
  detail::Engine e(seed);
  detail::Tracker t(5, "classical identities", 1e-10);
  for (int s = 0; s < 100; ++s) {
    const JointProbabilityMatrix p(detail::random_joint(e));
    const double hxy = joint_entropy(p);
    const double hx = shannon_entropy(p.row_marginal());
    const double hy = shannon_entropy(p.column_marginal());
    // H(X,Y) = H(X) + H(Y|X) and = H(Y) + H(X|Y)
    t.observe(std::abs(hxy - hx - complete_conditional_entropy(p, Axis::row)));
    t.observe(std::abs(hxy - hy - complete_conditional_entropy(p, Axis::column)));
    // H(X,Y) <= H(X) + H(Y); H(X,Y) >= max(H(X), H(Y))
    t.observe(std::max(0.0, hxy - hx - hy));
    t.observe(std::max(0.0, std::max(hx, hy) - hxy));
    // I_{Y->X} = I_{X->Y} = I
    const double i = mutual_information(p);
    t.observe(std::abs(information_gain(p, Axis::column) - i));
    t.observe(std::abs(information_gain(p, Axis::row) - i));
    t.observe(std::abs(mutual_information(p.transposed()) - i));
    t.observe(std::max(0.0, -(hx + hy - hxy)));
  }
  double independence = 0.0;
  for (int s = 0; s < 100; ++s) {
    const RealMatrix a = detail::random_joint(e);
    const RealVector px = a.rowwise().sum(), py = a.colwise().sum().transpose();
    const JointProbabilityMatrix product(px * py.transpose());
    independence = std::max(independence, std::abs(mutual_information_kullback(product)));
    independence = std::max(independence, std::abs(shannon_entropy(product.row_marginal()) +
                                                    shannon_entropy(product.column_marginal()) -
                                                    joint_entropy(product)));
  }
  if (independence > 1e-12) t.fail("independent product gives I = " + std::to_string(independence));
  std::ostringstream os;
  os << "100 random joints; products: max |I| = " << independence << " (limit 1e-12)";
  return t.finish(os.str());
}

/// 6. Marginals of two-spin tomograms equal tomograms of the reduced states,
/// whatever the discarded spin's frame.
inline CriterionResult marginal_consistency(std::uint64_t seed) {
  detail::Engine e(seed);
  detail::Tracker t(6, "marginal consistency", 1e-10);
  for (int s = 0; s < 50; ++s) {
    const BipartiteShape shape(HalfInteger::from_twice(1 + s % 3), HalfInteger::from_twice(1 + (s / 3) % 3));
    const DensityMatrix rho = detail::random_state(shape.dim(), e);
    const DensityMatrix r1 = partial_trace(rho, shape, Subsystem::first);
    const DensityMatrix r2 = partial_trace(rho, shape, Subsystem::second);
    const EulerAngles a1 = detail::random_angles(e), a2 = detail::random_angles(e);
    for (int k = 0; k < 3; ++k) {
      const EulerAngles other = detail::random_angles(e);
      t.observe(detail::max_diff(marginal(two_spin_tomogram(rho, shape, a1, other), Subsystem::first).probabilities,
                                 spin_tomogram(r1, shape.j1, a1).probabilities));
      t.observe(detail::max_diff(marginal(two_spin_tomogram(rho, shape, other, a2), Subsystem::second).probabilities,
                                 spin_tomogram(r2, shape.j2, a2).probabilities));
    }
  }
  return t.finish("50 states x 3 frames of the discarded spin");
}

/// 7. S(U) >= S_N on random frames, the minimizer reaches S_N, the eigenframe attains it.
inline CriterionResult minimum_principle(std::uint64_t seed) {
  detail::Engine e(seed);
  detail::Tracker t(7, "minimum principle", 0.0);
  double worst_bound = 0.0, worst_gap = 0.0, worst_eigen = 0.0;
  int max_restarts = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int s = 0; s < 20; ++s) {
      const DensityMatrix rho = random_density(n, n, e());
      const double sn = von_neumann_entropy(rho);
      const LandscapeScan scan = entropy_landscape_scan(rho, 1000, e());
      worst_bound = std::max(worst_bound, sn - scan.min);
      MinimizerConfig cfg;
      cfg.restarts = 8;
      cfg.tol = 1e-7;
      cfg.seed = e();
      const MinimizationResult m = minimize(rho, cfg);
      worst_gap = std::max(worst_gap, std::abs(m.entropy_gap));
      max_restarts = std::max(max_restarts, m.restarts_used);
      const AnalyticMinimum exact = analytic_minimum(rho);
      worst_eigen = std::max(worst_eigen,
                             std::abs(tomographic_entropy(unitary_tomogram(rho, exact.frame)) - sn));
    }
  }
  if (worst_bound > 1e-10) t.fail("(a) a random frame undercut S_N by " + std::to_string(worst_bound));
  if (worst_gap > 1e-6) t.fail("(b) minimizer gap " + std::to_string(worst_gap));
  if (max_restarts > 8) t.fail("(b) needed more than 8 restarts");
  if (worst_eigen > 1e-12) t.fail("(c) eigenframe entropy off by " + std::to_string(worst_eigen));
  std::ostringstream os;
  os << "(a) max S_N - S(U) = " << worst_bound << " [<= 1e-10]; (b) max gap = " << worst_gap
     << " [<= 1e-6], restarts <= " << max_restarts << "; (c) max |S(U0) - S_N| = " << worst_eigen
     << " [<= 1e-12]";
  return t.finish(os.str());
}

/// 8. Bell state at the identity frame; pure and maximally mixed states.
inline CriterionResult scalar_anchors(std::uint64_t seed) {
  detail::Engine e(seed);
  detail::Tracker t(8, "scalar anchors", 1e-10);
  const BipartiteShape qubits(HalfInteger::from_twice(1), HalfInteger::from_twice(1));
  const JointTomogram bell = two_spin_unitary_tomogram(detail::bell_state(), qubits, UnitaryFrame::identity(4));
  t.observe(std::abs(joint_tomographic_entropy(bell) - ln2));
  t.observe(std::abs(subsystem_tomographic_entropy(bell, Subsystem::first) - ln2));
  t.observe(std::abs(subsystem_tomographic_entropy(bell, Subsystem::second) - ln2));
  t.observe(std::abs(tomographic_mutual_information(bell, true) - ln2));
  double exact = 0.0;
  for (int n = 1; n <= 6; ++n) {
    exact = std::max(exact, von_neumann_entropy(random_density(n, 1, e())));
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(n);
    exact = std::max(exact, std::abs(von_neumann_entropy(mixed) - std::log(n)));
    exact = std::max(exact, std::abs(tomographic_entropy(unitary_tomogram(mixed, detail::random_frame(n, e))) -
                                     std::log(n)));
    const HalfInteger j = HalfInteger::from_twice(n - 1);
    exact = std::max(exact, std::abs(tomographic_entropy(spin_tomogram(mixed, j, detail::random_angles(e))) -
                                     std::log(n)));
  }
  if (exact > 1e-12) t.fail("pure/maximally mixed anchors off by " + std::to_string(exact));
  std::ostringstream os;
  os << "Bell: S, S1, S2, I = ln 2; pure S_N = 0 and mixed S = ln n: max dev " << exact << " [<= 1e-12]";
  return t.finish(os.str());
}

/// 9. Relative-entropy and entropy-difference forms of I agree.
inline CriterionResult dual_form_identity(std::uint64_t seed) {
  detail::Engine e(seed);
  detail::Tracker t(9, "dual-form mutual information", 1e-10);
  std::uniform_int_distribution<int> pair(1, 3);
  for (int s = 0; s < 100; ++s) {
    const BipartiteShape shape(HalfInteger::from_twice(pair(e)), HalfInteger::from_twice(pair(e)));
    const DensityMatrix rho = detail::random_state(shape.dim(), e);
    const JointTomogram tom = (s % 2 == 0)
                                  ? two_spin_unitary_tomogram(rho, shape, detail::random_frame(shape.dim(), e))
                                  : two_spin_tomogram(rho, shape, detail::random_angles(e), detail::random_angles(e));
    const double difference = subsystem_tomographic_entropy(tom, Subsystem::first) +
                              subsystem_tomographic_entropy(tom, Subsystem::second) -
                              joint_tomographic_entropy(tom);
    t.observe(std::abs(difference - tomographic_mutual_information_kullback(tom)));
  }
  return t.finish("100 bipartite states, unitary and local frames");
}

inline constexpr std::uint64_t default_seed = 20240611;

/// Criteria 1-9 in order.
inline std::vector<CriterionResult> run_property_suite(std::uint64_t seed = default_seed) {
  return {normalization(seed + 1),       psi_independence(seed + 2),  reconstruction_round_trip(seed + 3),
          frame_consistency(seed + 4),   classical_identities(seed + 5), marginal_consistency(seed + 6),
          minimum_principle(seed + 7),   scalar_anchors(seed + 8),    dual_form_identity(seed + 9)};
}

inline std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << "  worst=" << r.worst
     << " threshold=" << r.threshold;
  if (!r.detail.empty()) os << "  (" << r.detail << ")";
  return os.str();
}

}  // namespace spintomo::verification
