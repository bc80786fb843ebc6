#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spintomo/errors.hpp"
#include "spintomo/half_integer.hpp"
#include "spintomo/linalg.hpp"
#include "spintomo/quadrature.hpp"
#include "spintomo/quantum_state.hpp"
#include "spintomo/su2.hpp"
#include "spintomo/wigner3j.hpp"

namespace spintomo {

/// An element of U(n): the rotated measurement basis |j m~> = U |j m>.
class UnitaryFrame {
 public:
  static UnitaryFrame from_matrix(const ComplexMatrix& u, double tol = 1e-12) {
    if (u.rows() != u.cols() || u.rows() == 0)
      throw invalid_argument("unitary frame must be a non-empty square matrix");
    const double defect = unitarity_defect(u);
    if (!(defect <= tol))
      throw invalid_argument("frame is not unitary: max |U^dagger U - I| = " +
                             std::to_string(defect));
    return UnitaryFrame(u);
  }
  static UnitaryFrame identity(int n) { return UnitaryFrame(ComplexMatrix::Identity(n, n)); }
  static UnitaryFrame rotation(HalfInteger j, const EulerAngles& a) {
    return UnitaryFrame(wigner_D(j, a));
  }
  static UnitaryFrame local_rotation(const BipartiteShape& shape, const EulerAngles& a1,
                                     const EulerAngles& a2) {
    return UnitaryFrame(kron(wigner_D(shape.j1, a1), wigner_D(shape.j2, a2)));
  }

  int n() const { return static_cast<int>(u_.rows()); }
  const ComplexMatrix& matrix() const { return u_; }

 private:
  explicit UnitaryFrame(ComplexMatrix u) : u_(std::move(u)) {}
  ComplexMatrix u_;
};

using SpinFrame = std::variant<EulerAngles, UnitaryFrame>;
using JointFrame = std::variant<std::pair<EulerAngles, EulerAngles>, UnitaryFrame>;

inline constexpr double probability_slack = 1e-12;
inline constexpr double normalization_tolerance = 1e-10;
inline constexpr double max_negative_deficit = 1e-9;

/// Clamps rounding noise out of a probability vector.
///
/// Negative entries are set to 0; when that removes a total mass below
/// max_negative_deficit the vector is renormalized, larger deficits throw.
/// The result must sum to 1 within normalization_tolerance.
inline std::vector<double> sanitize_probabilities(std::vector<double> p) {
  double deficit = 0.0;
  for (double& x : p) {
    if (!std::isfinite(x)) throw numerical_error("probability is not finite");
    if (x < 0.0) {
      deficit -= x;
      x = 0.0;
    } else if (x > 1.0 + probability_slack) {
      throw numerical_error("probability exceeds 1: " + std::to_string(x));
    } else if (x > 1.0) {
      x = 1.0;
    }
  }
  if (deficit > max_negative_deficit)
    throw numerical_error("negative probability mass " + std::to_string(deficit) +
                          " is too large to be rounding noise");
  double total = 0.0;
  for (double x : p) total += x;
  if (deficit > 0.0 && total > 0.0)
    for (double& x : p) x /= total;
  else if (std::abs(total - 1.0) > normalization_tolerance)
    throw invalid_argument("probabilities sum to " + std::to_string(total) + ", not 1");
  return p;
}

/// Distribution of the spin projection m (descending) in a given frame.
struct SpinTomogram {
  HalfInteger j;
  SpinFrame frame;
  std::vector<double> probabilities;

  SpinTomogram(HalfInteger spin, SpinFrame f, std::vector<double> p)
      : j(require_spin(spin)), frame(std::move(f)), probabilities(sanitize_probabilities(std::move(p))) {
    if (static_cast<int>(probabilities.size()) != multiplicity(j))
      throw dimension_mismatch("tomogram for spin " + j.to_string() + " needs " +
                               std::to_string(multiplicity(j)) + " probabilities");
  }

  double probability(HalfInteger m) const {
    if (!is_projection_of(j, m)) throw invalid_argument("projection out of range");
    return probabilities[index_of(j, m)];
  }
  double sum() const {
    double s = 0.0;
    for (double x : probabilities) s += x;
    return s;
  }
};

/// Joint distribution of (m1, m2), rows m1 descending, columns m2 descending.
struct JointTomogram {
  BipartiteShape shape;
  JointFrame frame;
  RealMatrix probabilities;

  JointTomogram(BipartiteShape s, JointFrame f, const RealMatrix& p)
      : shape(s), frame(std::move(f)) {
    if (p.rows() != shape.n1() || p.cols() != shape.n2())
      throw dimension_mismatch("joint tomogram shape does not match the spins");
    std::vector<double> flat(p.size());
    for (Eigen::Index r = 0; r < p.rows(); ++r)
      for (Eigen::Index c = 0; c < p.cols(); ++c) flat[r * p.cols() + c] = p(r, c);
    flat = sanitize_probabilities(std::move(flat));
    probabilities.resize(p.rows(), p.cols());
    for (Eigen::Index r = 0; r < p.rows(); ++r)
      for (Eigen::Index c = 0; c < p.cols(); ++c) probabilities(r, c) = flat[r * p.cols() + c];
  }

  double probability(HalfInteger m1, HalfInteger m2) const {
    return probabilities(index_of(shape.j1, m1), index_of(shape.j2, m2));
  }
  double sum() const { return probabilities.sum(); }
};

namespace detail {

inline std::vector<double> rotated_diagonal(const ComplexMatrix& rho, const ComplexMatrix& u) {
  std::vector<double> p(u.cols());
  for (Eigen::Index m = 0; m < u.cols(); ++m) p[m] = (u.col(m).adjoint() * rho * u.col(m))(0, 0).real();
  return p;
}

inline void require_dim(const DensityMatrix& rho, int expected, const char* what) {
  if (rho.dim() != expected)
    throw dimension_mismatch(std::string(what) + ": state has dimension " +
                             std::to_string(rho.dim()) + ", expected " + std::to_string(expected));
}

inline SpinFrame marginal_frame(const JointFrame& f, Subsystem keep) {
  if (const auto* angles = std::get_if<std::pair<EulerAngles, EulerAngles>>(&f))
    return keep == Subsystem::first ? angles->first : angles->second;
  return std::get<UnitaryFrame>(f);
}

}  // namespace detail

/// omega(m, n) = <j m| D^dagger(u) rho D(u) |j m>. Independent of psi, which
/// the stored frame sets to 0.
inline SpinTomogram spin_tomogram(const DensityMatrix& rho, HalfInteger j, const EulerAngles& angles) {
  require_spin(j);
  detail::require_dim(rho, multiplicity(j), "spin_tomogram");
  const EulerAngles frame = angles.with_psi(0.0);
  return SpinTomogram(j, frame, detail::rotated_diagonal(rho.matrix(), wigner_D(j, frame)));
}

/// omega(m, U) = <j m| U^dagger rho U |j m> with j = (n - 1) / 2.
inline SpinTomogram unitary_tomogram(const DensityMatrix& rho, const UnitaryFrame& frame) {
  detail::require_dim(rho, frame.n(), "unitary_tomogram");
  const HalfInteger j = HalfInteger::from_twice(frame.n() - 1);
  return SpinTomogram(j, frame, detail::rotated_diagonal(rho.matrix(), frame.matrix()));
}

inline JointTomogram two_spin_unitary_tomogram(const DensityMatrix& rho, const BipartiteShape& shape,
                                               const UnitaryFrame& frame) {
  detail::require_dim(rho, shape.dim(), "two_spin_unitary_tomogram");
  if (frame.n() != shape.dim())
    throw dimension_mismatch("two_spin_unitary_tomogram: frame dimension " +
                             std::to_string(frame.n()) + " does not match the two-spin space");
  const auto diag = detail::rotated_diagonal(rho.matrix(), frame.matrix());
  RealMatrix p(shape.n1(), shape.n2());
  for (int a = 0; a < shape.n1(); ++a)
    for (int b = 0; b < shape.n2(); ++b) p(a, b) = diag[a * shape.n2() + b];
  return JointTomogram(shape, frame, p);
}

inline JointTomogram two_spin_tomogram(const DensityMatrix& rho, const BipartiteShape& shape,
                                       const EulerAngles& angles1, const EulerAngles& angles2) {
  detail::require_dim(rho, shape.dim(), "two_spin_tomogram");
  const EulerAngles a1 = angles1.with_psi(0.0), a2 = angles2.with_psi(0.0);
  JointTomogram t = two_spin_unitary_tomogram(rho, shape, UnitaryFrame::local_rotation(shape, a1, a2));
  t.frame = std::pair{a1, a2};
  return t;
}

/// Row (keep first) or column (keep second) sums.
inline SpinTomogram marginal(const JointTomogram& joint, Subsystem keep) {
  std::vector<double> p;
  if (keep == Subsystem::first) {
    for (int a = 0; a < joint.shape.n1(); ++a) p.push_back(joint.probabilities.row(a).sum());
  } else {
    for (int b = 0; b < joint.shape.n2(); ++b) p.push_back(joint.probabilities.col(b).sum());
  }
  return SpinTomogram(joint.shape.spin(keep), detail::marginal_frame(joint.frame, keep), std::move(p));
}

inline constexpr double default_conditioning_floor = 1e-12;

/// Distribution of the other spin given `given` spin had projection `outcome`:
/// omega(m_other, m_given) / omega_given(m_given).
inline SpinTomogram conditional(const JointTomogram& joint, Subsystem given, HalfInteger outcome,
                                double floor = default_conditioning_floor) {
  const HalfInteger jg = joint.shape.spin(given);
  if (!is_projection_of(jg, outcome))
    throw invalid_argument("conditioning outcome " + outcome.to_string() +
                           " is not a projection of spin " + jg.to_string());
  const int k = index_of(jg, outcome);
  const RealVector slice = given == Subsystem::second ? RealVector(joint.probabilities.col(k))
                                                      : RealVector(joint.probabilities.row(k).transpose());
  const double weight = slice.sum();
  if (!(weight > floor))
    throw invalid_argument("conditioning on outcome " + outcome.to_string() +
                           " of probability " + std::to_string(weight));
  std::vector<double> p(slice.size());
  for (Eigen::Index i = 0; i < slice.size(); ++i) p[i] = slice(i) / weight;
  const Subsystem other = given == Subsystem::first ? Subsystem::second : Subsystem::first;
  return SpinTomogram(joint.shape.spin(other), detail::marginal_frame(joint.frame, other), std::move(p));
}

/// Tomogram sampled at a group element. Reconstruction may call it from several
/// threads, so implementations must be safe for concurrent invocation.
using TomogramSource = std::function<SpinTomogram(const EulerAngles&)>;

/// Sign factor attached to omega(i, u) in the reconstruction kernel. Only
/// i_minus_mprime, i.e. (-1)^{i - m'}, inverts the forward map; the other
/// reading differs by (-1)^{2m'} and is kept for comparison.
enum class ReconstructionPhase { i_minus_mprime, i_plus_mprime };

/// Density matrix from sphere tomograms by integration over the rotation group:
///
///   rho_{mm'} = (-1)^{i-m'} sum_{k=0}^{2j} sum_{l=-k}^{k} (2k+1)^2 sum_i
///               integral omega(i,u) [D^k(u)^dagger]_{0l} (j j k; i -i 0) (j j k; m -m' l) dOmega / 8pi^2.
///
/// [D^k(u)^dagger]_{0l} = D^k_{0l}(u^{-1}) matches the D^dagger rho D tomogram convention.
/// The quadrature must have band_limit >= 4j for the result to be exact; no check is made
/// here so under-resolved grids can be studied. Samples are checked for spin and normalization.
inline ComplexMatrix reconstruct_matrix(const TomogramSource& tomogram, HalfInteger j,
                                        const GroupQuadrature& quad,
                                        ReconstructionPhase phase = ReconstructionPhase::i_minus_mprime) {
  require_spin(j);
  const int n = multiplicity(j);
  const int kmax = j.twice();  // k runs over integers 0..2j

  // (j j k; i -i 0) and (j j k; m -m' l) with l = m' - m.
  std::vector<std::vector<double>> diag3j(kmax + 1, std::vector<double>(n));
  std::vector<std::vector<double>> coupling3j(kmax + 1, std::vector<double>(n * n));
  for (int k = 0; k <= kmax; ++k) {
    const HalfInteger hk = HalfInteger::integer(k);
    for (int a = 0; a < n; ++a) {
      const HalfInteger m = projection_at(j, a);
      diag3j[k][a] = wigner_3j(j, j, hk, m, -m, HalfInteger{});
      for (int b = 0; b < n; ++b) {
        const HalfInteger mp = projection_at(j, b);
        coupling3j[k][a * n + b] = wigner_3j(j, j, hk, m, -mp, mp - m);
      }
    }
  }

  // moments[k][l] = sum_i s_i (j j k; i -i 0) integral omega(i,u) conj(D^k_{l0}(u)) dOmega / 8pi^2,
  // where s_i carries the i-dependent half of the sign.
  std::vector<std::vector<complex>> moments(kmax + 1);
  for (int k = 0; k <= kmax; ++k) moments[k].assign(2 * k + 1, complex{});
  for (const auto& node : quad.nodes) {
    const SpinTomogram sample = tomogram(node.angles);
    if (sample.j != j)
      throw dimension_mismatch("tomogram sample has spin " + sample.j.to_string() + ", expected " +
                               j.to_string());
    if (std::abs(sample.sum() - 1.0) > normalization_tolerance)
      throw invalid_argument("tomogram sample is not normalized");
    const double w = node.weight / group_volume;
    for (int k = 0; k <= kmax; ++k) {
      double radial = 0.0;
      for (int a = 0; a < n; ++a) {
        const HalfInteger i = projection_at(j, a);
        // (-1)^{i - j}: integral exponent; the j-dependent part is restored below.
        radial += parity_sign(i - j) * diag3j[k][a] * sample.probabilities[a];
      }
      if (radial == 0.0) continue;
      const ComplexMatrix dk = wigner_D(HalfInteger::integer(k), node.angles);
      for (int li = 0; li < 2 * k + 1; ++li)
        moments[k][li] += w * radial * std::conj(dk(li, k));  // D^k_{l0}, row l, column m=0
    }
  }

  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const HalfInteger m = projection_at(j, a), mp = projection_at(j, b);
      // (-1)^{i-m'} = (-1)^{i-j} (-1)^{j-m'}; (-1)^{i+m'} = (-1)^{i-j} (-1)^{j+m'}.
      const int sign = parity_sign(phase == ReconstructionPhase::i_minus_mprime ? j - mp : j + mp);
      const int l = (mp - m).twice() / 2;
      complex acc{};
      for (int k = std::abs(l); k <= kmax; ++k) {
        const double c = coupling3j[k][a * n + b];
        if (c == 0.0) continue;
        // Column l of D^k(u)^dagger, i.e. index k - l in the descending order.
        acc += static_cast<double>((2 * k + 1) * (2 * k + 1)) * c * moments[k][k - l];
      }
      rho(a, b) = static_cast<double>(sign) * acc;
    }
  }
  return rho;
}

/// reconstruct_matrix followed by density-matrix validation (default gate 1e-6).
inline DensityMatrix reconstruct_density(const TomogramSource& tomogram, HalfInteger j,
                                         const GroupQuadrature& quad,
                                         const Tolerances& tol = Tolerances::uniform(1e-6)) {
  if (quad.band_limit < 2 * j.twice())
    throw invalid_argument("band_limit " + std::to_string(quad.band_limit) +
                           " is below 4j = " + std::to_string(2 * j.twice()));
  ComplexMatrix m = reconstruct_matrix(tomogram, j, quad);
  return DensityMatrix::from_matrix(m, tol);
}

/// Sphere tomogram source for a known state, for round-trip checks.
inline TomogramSource tomogram_of(const DensityMatrix& rho, HalfInteger j) {
  return [rho, j](const EulerAngles& a) { return spin_tomogram(rho, j, a); };
}

}  // namespace spintomo
