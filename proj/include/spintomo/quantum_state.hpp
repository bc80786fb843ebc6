#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spintomo/errors.hpp"
#include "spintomo/half_integer.hpp"
#include "spintomo/linalg.hpp"

namespace spintomo {

/// Gates applied when a raw matrix is accepted as a density matrix.
struct Tolerances {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double positivity = 1e-10;

  static Tolerances uniform(double tol) { return {tol, tol, tol}; }
};

enum class Violation { shape, hermiticity, trace, positivity };

inline const char* to_string(Violation v) {
  switch (v) {
    case Violation::shape: return "shape";
    case Violation::hermiticity: return "hermiticity";
    case Violation::trace: return "trace";
    case Violation::positivity: return "positivity";
  }
  return "unknown";
}

struct ValidationIssue {
  Violation kind;
  double magnitude = 0.0;  // size of the violation (e.g. |Tr rho - 1|, -lambda_min)
  std::string message;
};

/// Every violated density-matrix invariant, each with its magnitude.
struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const { return issues.empty(); }
  bool has(Violation v) const {
    return std::any_of(issues.begin(), issues.end(), [v](const auto& i) { return i.kind == v; });
  }
  const ValidationIssue* find(Violation v) const {
    for (const auto& i : issues)
      if (i.kind == v) return &i;
    return nullptr;
  }
  std::string summary() const {
    std::ostringstream os;
    for (std::size_t k = 0; k < issues.size(); ++k) {
      if (k) os << "; ";
      os << to_string(issues[k].kind) << ": " << issues[k].message;
    }
    return os.str();
  }
};

class validation_error : public invalid_argument {
 public:
  explicit validation_error(ValidationReport report)
      : invalid_argument("invalid density matrix: " + report.summary()),
        report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

namespace detail {

inline ValidationReport check_density(const ComplexMatrix& m, const Tolerances& tol) {
  ValidationReport report;
  auto add = [&](Violation kind, double magnitude, const std::string& what) {
    std::ostringstream os;
    os.precision(3);
    os << what << " (" << std::scientific << magnitude << ")";
    report.issues.push_back({kind, magnitude, os.str()});
  };
  if (m.rows() != m.cols() || m.rows() == 0) {
    add(Violation::shape, 0.0, "matrix must be square and non-empty");
    return report;
  }
  if (!m.allFinite()) {
    add(Violation::shape, 0.0, "matrix has non-finite entries");
    return report;
  }
  const double herm = hermiticity_defect(m);
  if (herm > tol.hermiticity) add(Violation::hermiticity, herm, "max |rho - rho^dagger|");
  const double trace = std::abs(m.trace() - complex(1.0, 0.0));
  if (trace > tol.trace) add(Violation::trace, trace, "|Tr rho - 1|");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < -tol.positivity) add(Violation::positivity, -lowest, "smallest eigenvalue below 0");
  return report;
}

}  // namespace detail

/// Hermitian, unit-trace, positive-semidefinite matrix. Immutable once built.
class DensityMatrix {
 public:
  /// Throws validation_error listing every violated invariant.
  static DensityMatrix from_matrix(const ComplexMatrix& m, const Tolerances& tol = {}) {
    ValidationReport report = detail::check_density(m, tol);
    if (!report.ok()) throw validation_error(std::move(report));
    return DensityMatrix(m);
  }

  static DensityMatrix maximally_mixed(int dim) {
    if (dim < 1) throw invalid_argument("dimension must be at least 1");
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  /// diag(p) for a probability vector p.
  static DensityMatrix diagonal(const std::vector<double>& p) {
    ComplexMatrix m = ComplexMatrix::Zero(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m(i, i) = p[i];
    return from_matrix(m);
  }

  int dim() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const { return rho_; }
  complex operator()(int r, int c) const { return rho_(r, c); }

  double purity() const { return (rho_ * rho_).trace().real(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : rho_(std::move(m)) {}
  ComplexMatrix rho_;
};

/// Raw matrix in, checked DensityMatrix or a report out.
inline std::variant<DensityMatrix, ValidationReport> validate(const ComplexMatrix& m,
                                                              const Tolerances& tol = {}) {
  ValidationReport report = detail::check_density(m, tol);
  if (!report.ok()) return report;
  return DensityMatrix::from_matrix(m, tol);
}

inline std::variant<DensityMatrix, ValidationReport> validate(const ComplexMatrix& m, double tol) {
  return validate(m, Tolerances::uniform(tol));
}

/// Unit-norm state vector.
class PureState {
 public:
  /// Rejects vectors whose norm differs from 1 by more than `tol`; the stored
  /// amplitudes are rescaled to unit norm.
  static PureState from_amplitudes(const ComplexVector& v, double tol = 1e-8) {
    if (v.size() == 0) throw invalid_argument("empty state vector");
    const double norm = v.norm();
    if (!(std::abs(norm - 1.0) <= tol))
      throw invalid_argument("state vector is not normalized (|psi| = " + std::to_string(norm) +
                             ")");
    return PureState(v / norm);
  }

  /// Normalizes any non-zero vector.
  static PureState normalized(const ComplexVector& v) {
    const double norm = v.norm();
    if (!(norm > 0.0)) throw invalid_argument("cannot normalize the zero vector");
    return PureState(v / norm);
  }

  static PureState basis(int dim, int index) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return PureState(v);
  }

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  explicit PureState(ComplexVector v) : amplitudes_(std::move(v)) {}
  ComplexVector amplitudes_;
};

inline DensityMatrix from_pure(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix::from_matrix(a * a.adjoint());
}

enum class Subsystem { first, second };

/// Two spins j1, j2 in the product basis |m1 m2>, index (j1-m1)*n2 + (j2-m2).
struct BipartiteShape {
  HalfInteger j1;
  HalfInteger j2;

  BipartiteShape() = default;
  BipartiteShape(HalfInteger a, HalfInteger b) : j1(require_spin(a)), j2(require_spin(b)) {}

  int n1() const { return multiplicity(j1); }
  int n2() const { return multiplicity(j2); }
  int dim() const { return n1() * n2(); }
  int index(HalfInteger m1, HalfInteger m2) const {
    return index_of(j1, m1) * n2() + index_of(j2, m2);
  }
  HalfInteger spin(Subsystem s) const { return s == Subsystem::first ? j1 : j2; }

  bool operator==(const BipartiteShape&) const = default;
};

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, const BipartiteShape& shape,
                                   Subsystem keep) {
  if (rho.dim() != shape.dim())
    throw dimension_mismatch("partial_trace: state dimension " + std::to_string(rho.dim()) +
                             " does not match shape dimension " + std::to_string(shape.dim()));
  const int n1 = shape.n1(), n2 = shape.n2();
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out;
  if (keep == Subsystem::first) {
    out = ComplexMatrix::Zero(n1, n1);
    for (int a = 0; a < n1; ++a)
      for (int b = 0; b < n1; ++b)
        for (int k = 0; k < n2; ++k) out(a, b) += m(a * n2 + k, b * n2 + k);
  } else {
    out = ComplexMatrix::Zero(n2, n2);
    for (int a = 0; a < n2; ++a)
      for (int b = 0; b < n2; ++b)
        for (int k = 0; k < n1; ++k) out(a, b) += m(k * n2 + a, k * n2 + b);
  }
  return DensityMatrix::from_matrix(out);
}

/// Ginibre-induced random state: G G^dagger / Tr(G G^dagger) with G a dim x rank
/// matrix of standard complex Gaussians drawn from mt19937_64(seed).
inline DensityMatrix random_density(int dim, int rank, std::uint64_t seed) {
  if (dim < 1) throw invalid_argument("dimension must be at least 1");
  if (rank < 1 || rank > dim)
    throw invalid_argument("rank must satisfy 1 <= rank <= dim, got " + std::to_string(rank));
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(dim, rank);
  for (int c = 0; c < rank; ++c)
    for (int r = 0; r < dim; ++r) {
      const double re = normal(engine);
      const double im = normal(engine);
      g(r, c) = complex(re, im);
    }
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix::from_matrix(m);
}

/// Eigenvalues and eigenvectors of rho, ordered by descending eigenvalue.
struct Eigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;  // column k belongs to values[k]
};

inline Eigensystem eigensystem(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  const int n = rho.dim();
  Eigensystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (int k = 0; k < n; ++k) {
    out.values[k] = es.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return out;
}

/// Real eigenvalues, descending.
inline std::vector<double> spectrum(const DensityMatrix& rho) { return eigensystem(rho).values; }

/// U rho U^dagger.
inline DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim())
    throw dimension_mismatch("conjugate: unitary and state dimensions differ");
  ComplexMatrix m = u * rho.matrix() * u.adjoint();
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix::from_matrix(m, Tolerances{1e-12, 1e-10, 1e-10});
}

/// alpha * a + (1 - alpha) * b for alpha in [0, 1].
inline DensityMatrix mixture(double alpha, const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw dimension_mismatch("mixture: dimensions differ");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw invalid_argument("mixing weight outside [0, 1]");
  return DensityMatrix::from_matrix(alpha * a.matrix() + (1.0 - alpha) * b.matrix());
}

}  // namespace spintomo
