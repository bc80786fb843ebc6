#pragma once

// Shannon-type entropies and informations of (joint) probability tables and
// tomograms, plus the von Neumann entropy. All values are in nats.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spintomo/errors.hpp"
#include "spintomo/quantum_state.hpp"
#include "spintomo/tomography.hpp"

namespace spintomo {

inline constexpr double ln2 = 0.693147180559945309417232121458176568;

/// Converts nats to bits.
inline double to_bits(double nats) { return nats / ln2; }

/// Probability vector: entries in [0, 1] summing to 1 within 1e-10.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> p) : values_(sanitize_probabilities(std::move(p))) {
    if (values_.empty()) throw invalid_argument("probability vector must be non-empty");
  }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Joint table P(x_i, y_j): rows index X, columns index Y.
class JointProbabilityMatrix {
 public:
  explicit JointProbabilityMatrix(const RealMatrix& p) {
    if (p.size() == 0) throw invalid_argument("joint probability table must be non-empty");
    std::vector<double> flat(p.data(), p.data() + p.size());
    flat = sanitize_probabilities(std::move(flat));
    values_ = Eigen::Map<const RealMatrix>(flat.data(), p.rows(), p.cols());
  }
  const RealMatrix& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

  ProbabilityVector row_marginal() const {
    std::vector<double> p(rows());
    for (Eigen::Index i = 0; i < rows(); ++i) p[i] = values_.row(i).sum();
    return ProbabilityVector(std::move(p));
  }
  ProbabilityVector column_marginal() const {
    std::vector<double> p(cols());
    for (Eigen::Index j = 0; j < cols(); ++j) p[j] = values_.col(j).sum();
    return ProbabilityVector(std::move(p));
  }
  JointProbabilityMatrix transposed() const { return JointProbabilityMatrix(values_.transpose()); }

 private:
  RealMatrix values_;
};

/// Which variable a conditional is taken on: rows (X) or columns (Y).
enum class Axis { row, column };

namespace detail {

// -p ln p with 0 ln 0 = 0; negatives are clamped to 0.
inline double entropy_term(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

// -sum p ln(p / q), skipping cells with p == 0.
inline double cross_term(double p, double q) { return p > 0.0 ? -p * std::log(p / q) : 0.0; }

}  // namespace detail

inline double shannon_entropy(const ProbabilityVector& p) {
  double h = 0.0;
  for (double x : p.values()) h += detail::entropy_term(x);
  return std::max(h, 0.0);
}

inline double joint_entropy(const JointProbabilityMatrix& joint) {
  double h = 0.0;
  const RealMatrix& v = joint.values();
  for (Eigen::Index i = 0; i < v.rows(); ++i)
    for (Eigen::Index j = 0; j < v.cols(); ++j) h += detail::entropy_term(v(i, j));
  return std::max(h, 0.0);
}

inline constexpr double conditioning_floor = 1e-12;

/// H(Y | x_i) for condition_on == row, H(X | y_j) for column.
inline double conditional_entropy_given(const JointProbabilityMatrix& joint, Axis condition_on,
                                        Eigen::Index index) {
  const RealMatrix& v = joint.values();
  const Eigen::Index limit = condition_on == Axis::row ? v.rows() : v.cols();
  if (index < 0 || index >= limit) throw invalid_argument("conditioning index out of range");
  RealVector slice = condition_on == Axis::row ? RealVector(v.row(index).transpose())
                                               : RealVector(v.col(index));
  const double weight = slice.sum();
  if (!(weight > conditioning_floor))
    throw invalid_argument("conditioning on an outcome of probability " + std::to_string(weight));
  double h = 0.0;
  for (Eigen::Index k = 0; k < slice.size(); ++k) h += detail::entropy_term(slice(k) / weight);
  return std::max(h, 0.0);
}

/// Complete conditional entropy: H(Y|X) = -sum_ij P_ij ln P(y_j | x_i) when
/// conditioning on rows, H(X|Y) on columns. Empty conditions contribute 0.
inline double complete_conditional_entropy(const JointProbabilityMatrix& joint, Axis condition_on) {
  const RealMatrix& v = joint.values();
  double h = 0.0;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      const double marginal = condition_on == Axis::row ? v.row(i).sum() : v.col(j).sum();
      if (marginal > 0.0) h += detail::cross_term(v(i, j), marginal);
    }
  }
  return std::max(h, 0.0);
}

/// I = H(X) + H(Y) - H(X,Y), clamped at 0.
inline double mutual_information(const JointProbabilityMatrix& joint) {
  const double i = shannon_entropy(joint.row_marginal()) + shannon_entropy(joint.column_marginal()) -
                   joint_entropy(joint);
  return std::max(i, 0.0);
}

/// Information on X gained by observing Y: H(X) - H(X|Y).
inline double information_gain(const JointProbabilityMatrix& joint, Axis observed) {
  const ProbabilityVector target =
      observed == Axis::column ? joint.row_marginal() : joint.column_marginal();
  return shannon_entropy(target) - complete_conditional_entropy(joint, observed);
}

/// sum_ij P_ij ln(P_ij / (P_i. P_.j)), the relative-entropy form of I.
inline double mutual_information_kullback(const JointProbabilityMatrix& joint) {
  const RealMatrix& v = joint.values();
  const RealVector rows = v.rowwise().sum();
  const RealVector cols = v.colwise().sum().transpose();
  double i = 0.0;
  for (Eigen::Index a = 0; a < v.rows(); ++a)
    for (Eigen::Index b = 0; b < v.cols(); ++b)
      if (v(a, b) > 0.0) i += v(a, b) * std::log(v(a, b) / (rows(a) * cols(b)));
  return i;
}

// Tomographic entropies.

/// S(n) on the sphere for Euler-angle frames, S(U) on U(n) for unitary ones.
inline double tomographic_entropy(const SpinTomogram& t) {
  return shannon_entropy(ProbabilityVector(t.probabilities));
}

inline JointProbabilityMatrix joint_table(const JointTomogram& t) {
  return JointProbabilityMatrix(t.probabilities);
}

inline double joint_tomographic_entropy(const JointTomogram& t) { return joint_entropy(joint_table(t)); }

/// S_1 or S_2: entropy of one spin's marginal tomogram.
inline double subsystem_tomographic_entropy(const JointTomogram& t, Subsystem which) {
  return tomographic_entropy(marginal(t, which));
}

/// Relative-entropy form of the tomographic mutual information.
inline double tomographic_mutual_information_kullback(const JointTomogram& t) {
  return mutual_information_kullback(joint_table(t));
}

inline constexpr double dual_form_tolerance = 1e-10;

#ifdef NDEBUG
inline constexpr bool cross_check_by_default = false;
#else
inline constexpr bool cross_check_by_default = true;
#endif

/// I = S_1 + S_2 - S. With `cross_check`, also evaluates the relative-entropy
/// form and throws numerical_error if the two disagree by more than 1e-10.
inline double tomographic_mutual_information(const JointTomogram& t,
                                             bool cross_check = cross_check_by_default) {
  const double value = subsystem_tomographic_entropy(t, Subsystem::first) +
                       subsystem_tomographic_entropy(t, Subsystem::second) -
                       joint_tomographic_entropy(t);
  if (cross_check) {
    const double kl = tomographic_mutual_information_kullback(t);
    if (std::abs(kl - value) > dual_form_tolerance)
      throw numerical_error("mutual information forms disagree: " + std::to_string(value) +
                            " vs " + std::to_string(kl));
  }
  return std::max(value, 0.0);
}

inline constexpr double eigenvalue_floor = 1e-14;

/// S_N = -Tr(rho ln rho) from the spectrum; eigenvalues below 1e-14 count as 0.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : spectrum(rho))
    if (lambda > eigenvalue_floor) s -= lambda * std::log(lambda);
  return std::max(s, 0.0);
}

}  // namespace spintomo
