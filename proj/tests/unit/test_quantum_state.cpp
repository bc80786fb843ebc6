#include <cmath>
#include <variant>

#include <gtest/gtest.h>

#include "spintomo/quantum_state.hpp"

using namespace spintomo;

namespace {

ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  ComplexMatrix m(rows.size(), rows.begin()->size());
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

ComplexVector bell_vector() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST(FromPure, ReferenceStates) {
  EXPECT_LE(max_abs(from_pure(PureState::basis(2, 0)).matrix() - real_matrix({{1, 0}, {0, 0}})), 1e-15);

  ComplexVector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  EXPECT_LE(max_abs(from_pure(PureState::from_amplitudes(plus)).matrix() - real_matrix({{.5, .5}, {.5, .5}})), 1e-15);

  const ComplexMatrix bell = from_pure(PureState::from_amplitudes(bell_vector())).matrix();
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  EXPECT_LE(max_abs(bell - expected), 1e-15);
}

TEST(PureState, NormalizationChecks) {
  ComplexVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(PureState::from_amplitudes(v), invalid_argument);
  EXPECT_NEAR(PureState::normalized(v).amplitudes().norm(), 1.0, 1e-15);
  EXPECT_THROW(PureState::normalized(ComplexVector::Zero(2)), invalid_argument);
}

TEST(Validate, AcceptsAndRejectsWithNamedViolations) {
  EXPECT_TRUE(std::holds_alternative<DensityMatrix>(validate(real_matrix({{.5, 0}, {0, .5}}), Tolerances{})));

  const auto trace = validate(real_matrix({{.7, 0}, {0, .4}}), Tolerances{});
  ASSERT_TRUE(std::holds_alternative<ValidationReport>(trace));
  const auto& tr = std::get<ValidationReport>(trace);
  ASSERT_TRUE(tr.has(Violation::trace));
  EXPECT_NEAR(tr.find(Violation::trace)->magnitude, 0.1, 1e-15);
  EXPECT_FALSE(tr.has(Violation::positivity));

  const auto pos = validate(real_matrix({{.5, .6}, {.6, .5}}), Tolerances{});
  ASSERT_TRUE(std::holds_alternative<ValidationReport>(pos));
  const auto& pr = std::get<ValidationReport>(pos);
  ASSERT_TRUE(pr.has(Violation::positivity));
  EXPECT_NEAR(pr.find(Violation::positivity)->magnitude, 0.1, 1e-14);
  EXPECT_FALSE(pr.has(Violation::trace));

  ComplexMatrix herm = real_matrix({{.5, 0}, {0, .5}});
  herm(0, 1) = complex(0, 0.1);
  EXPECT_TRUE(std::get<ValidationReport>(validate(herm, Tolerances{})).has(Violation::hermiticity));
  EXPECT_TRUE(std::get<ValidationReport>(validate(ComplexMatrix::Zero(2, 3), Tolerances{})).has(Violation::shape));
}

TEST(Validate, ThrowingFactoryCarriesReport) {
  try {
    DensityMatrix::from_matrix(real_matrix({{.5, .6}, {.6, .5}}));
    FAIL() << "expected validation_error";
  } catch (const validation_error& e) {
    EXPECT_TRUE(e.report().has(Violation::positivity));
    EXPECT_NE(std::string(e.what()).find("positivity"), std::string::npos);
  }
}

TEST(Validate, LooserTolerancesAcceptQuadratureNoise) {
  ComplexMatrix m = real_matrix({{.5, 0}, {0, .5}});
  m(0, 0) += 1e-9;
  EXPECT_TRUE(std::holds_alternative<ValidationReport>(validate(m, Tolerances{})));
  EXPECT_TRUE(std::holds_alternative<DensityMatrix>(validate(m, 1e-6)));
}

TEST(TensorProduct, ReferenceProducts) {
  const auto up = DensityMatrix::diagonal({1, 0});
  EXPECT_LE(max_abs(tensor_product(up, up).matrix() - DensityMatrix::diagonal({1, 0, 0, 0}).matrix()), 0);
  EXPECT_LE(max_abs(tensor_product(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2)).matrix() -
                    ComplexMatrix::Identity(4, 4) / 4.0),
            1e-16);
  const double p = 0.3, q = 0.8;
  const auto pq = tensor_product(DensityMatrix::diagonal({p, 1 - p}), DensityMatrix::diagonal({q, 1 - q}));
  EXPECT_LE(max_abs(pq.matrix() - DensityMatrix::diagonal({p * q, p * (1 - q), (1 - p) * q, (1 - p) * (1 - q)}).matrix()),
            1e-16);
}

TEST(PartialTrace, ReferenceStates) {
  const BipartiteShape qubits(HalfInteger::from_twice(1), HalfInteger::from_twice(1));
  const auto bell = from_pure(PureState::from_amplitudes(bell_vector()));
  EXPECT_LE(max_abs(partial_trace(bell, qubits, Subsystem::first).matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LE(max_abs(partial_trace(DensityMatrix::maximally_mixed(4), qubits, Subsystem::second).matrix() -
                    ComplexMatrix::Identity(2, 2) / 2.0),
            1e-15);

  const BipartiteShape mixed_shape(HalfInteger::from_twice(2), HalfInteger::from_twice(1));
  const auto r1 = random_density(3, 3, 11), r2 = random_density(2, 2, 12);
  const auto product = tensor_product(r1, r2);
  EXPECT_LE(max_abs(partial_trace(product, mixed_shape, Subsystem::first).matrix() - r1.matrix()), 1e-12);
  EXPECT_LE(max_abs(partial_trace(product, mixed_shape, Subsystem::second).matrix() - r2.matrix()), 1e-12);
  EXPECT_THROW(partial_trace(r1, mixed_shape, Subsystem::first), dimension_mismatch);
}

TEST(BipartiteShape, IndexLayout) {
  const BipartiteShape s(HalfInteger::from_twice(1), HalfInteger::from_twice(2));
  EXPECT_EQ(s.dim(), 6);
  EXPECT_EQ(s.index(HalfInteger::from_twice(1), HalfInteger::from_twice(2)), 0);
  EXPECT_EQ(s.index(HalfInteger::from_twice(1), HalfInteger::from_twice(-2)), 2);
  EXPECT_EQ(s.index(HalfInteger::from_twice(-1), HalfInteger::from_twice(0)), 4);
}

TEST(RandomDensity, RankDeterminismAndSpectrum) {
  const auto pure = random_density(2, 1, 5);
  EXPECT_NEAR(pure.purity(), 1.0, 1e-10);
  EXPECT_EQ(max_abs(random_density(4, 2, 99).matrix() - random_density(4, 2, 99).matrix()), 0.0);
  EXPECT_GT(max_abs(random_density(4, 2, 99).matrix() - random_density(4, 2, 100).matrix()), 0.0);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density(3, 3, seed);
    const auto ev = spectrum(rho);
    double sum = 0.0;
    for (double v : ev) {
      EXPECT_GE(v, -1e-14);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    // Characteristic polynomial det(lambda - rho) = l^3 - c2 l^2 + c1 l - c0 vanishes on the spectrum.
    const ComplexMatrix& m = rho.matrix();
    const double c2 = m.trace().real();
    const double c1 = 0.5 * (c2 * c2 - (m * m).trace().real());
    const double c0 = m.determinant().real();
    for (double l : ev) EXPECT_NEAR(l * l * l - c2 * l * l + c1 * l - c0, 0.0, 1e-13);
  }
  EXPECT_THROW(random_density(3, 4, 0), invalid_argument);
  EXPECT_THROW(random_density(0, 1, 0), invalid_argument);
}

TEST(Spectrum, ReferenceMatrices) {
  auto near = [](std::vector<double> a, std::vector<double> b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
  };
  near(spectrum(DensityMatrix::diagonal({0.3, 0.7})), {0.7, 0.3});
  near(spectrum(DensityMatrix::maximally_mixed(2)), {0.5, 0.5});
  near(spectrum(DensityMatrix::from_matrix(real_matrix({{.5, .5}, {.5, .5}}))), {1.0, 0.0});
}

TEST(Eigensystem, ReconstructsMatrix) {
  const auto rho = random_density(5, 3, 21);
  const Eigensystem es = eigensystem(rho);
  RealVector vals(es.values.size());
  for (std::size_t i = 0; i < es.values.size(); ++i) vals(i) = es.values[i];
  EXPECT_LE(max_abs(es.vectors * vals.cast<complex>().asDiagonal() * es.vectors.adjoint() - rho.matrix()), 1e-14);
  EXPECT_LE(unitarity_defect(es.vectors), 1e-14);
  for (std::size_t i = 1; i < es.values.size(); ++i) EXPECT_GE(es.values[i - 1], es.values[i]);
}

TEST(Conjugate, PreservesSpectrum) {
  const auto rho = random_density(3, 2, 8);
  ComplexMatrix u = ComplexMatrix::Zero(3, 3);
  u(0, 1) = 1;
  u(1, 2) = complex(0, 1);
  u(2, 0) = -1;
  const auto moved = conjugate(rho, u);
  const auto a = spectrum(rho), b = spectrum(moved);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
  EXPECT_NEAR(mixture(0.25, rho, moved).matrix().trace().real(), 1.0, 1e-15);
}
