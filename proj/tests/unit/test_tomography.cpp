#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "spintomo/tomography.hpp"

using namespace spintomo;

namespace {

HalfInteger spin(int twice) { return HalfInteger::from_twice(twice); }

EulerAngles random_angles(std::mt19937_64& e) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {two_pi * u(e), std::acos(1.0 - 2.0 * u(e)), two_pi * u(e)};
}

DensityMatrix bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1 / std::sqrt(2.0);
  return from_pure(PureState::from_amplitudes(v));
}

const BipartiteShape qubits(spin(1), spin(1));

void expect_probs(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "entry " << i;
}

std::vector<double> diagonal_of(const DensityMatrix& rho) {
  std::vector<double> d;
  for (int i = 0; i < rho.dim(); ++i) d.push_back(rho(i, i).real());
  return d;
}

}  // namespace

TEST(SpinTomogram, SpinUpFollowsHalfAngleLaw) {
  const auto up = from_pure(PureState::basis(2, 0));
  std::mt19937_64 e(1);
  for (int s = 0; s < 50; ++s) {
    const EulerAngles a = random_angles(e);
    const double c = std::cos(a.theta() / 2), sn = std::sin(a.theta() / 2);
    expect_probs(spin_tomogram(up, spin(1), a).probabilities, {c * c, sn * sn}, 1e-15);
  }
}

TEST(SpinTomogram, MaximallyMixedIsUniform) {
  std::mt19937_64 e(2);
  for (int tj = 0; tj <= 6; ++tj) {
    const auto rho = DensityMatrix::maximally_mixed(tj + 1);
    expect_probs(spin_tomogram(rho, spin(tj), random_angles(e)).probabilities,
                 std::vector<double>(tj + 1, 1.0 / (tj + 1)), 1e-14);
  }
}

TEST(SpinTomogram, NorthPoleGivesDiagonal) {
  for (int tj = 1; tj <= 4; ++tj) {
    const auto rho = random_density(tj + 1, tj + 1, tj);
    expect_probs(spin_tomogram(rho, spin(tj), {0, 0, 0}).probabilities, diagonal_of(rho), 1e-15);
  }
}

TEST(SpinTomogram, RejectsWrongDimension) {
  EXPECT_THROW(spin_tomogram(DensityMatrix::maximally_mixed(3), spin(1), {}), dimension_mismatch);
}

TEST(SpinTomogram, PsiDoesNotMatter) {
  std::mt19937_64 e(3);
  for (int tj = 1; tj <= 5; ++tj) {
    const auto rho = random_density(tj + 1, tj + 1, 40 + tj);
    const EulerAngles a = random_angles(e);
    const auto ref = spin_tomogram(rho, spin(tj), a).probabilities;
    for (double psi : {0.0, 0.7, 2.5, 6.0})
      expect_probs(unitary_tomogram(rho, UnitaryFrame::rotation(spin(tj), a.with_psi(psi))).probabilities, ref, 1e-12);
  }
}

TEST(UnitaryTomogram, ReferenceFrames) {
  const auto rho = random_density(4, 3, 5);
  expect_probs(unitary_tomogram(rho, UnitaryFrame::identity(4)).probabilities, diagonal_of(rho), 1e-15);

  const Eigensystem es = eigensystem(rho);
  expect_probs(unitary_tomogram(rho, UnitaryFrame::from_matrix(es.vectors, 1e-10)).probabilities, es.values, 1e-14);

  std::mt19937_64 e(6);
  std::normal_distribution<double> g;
  ComplexMatrix z(4, 4);
  for (int i = 0; i < 16; ++i) z(i / 4, i % 4) = complex(g(e), g(e));
  const ComplexMatrix q = z.householderQr().householderQ();
  expect_probs(unitary_tomogram(DensityMatrix::maximally_mixed(4), UnitaryFrame::from_matrix(q, 1e-10)).probabilities,
               {0.25, 0.25, 0.25, 0.25}, 1e-15);
}

TEST(UnitaryFrame, RejectsNonUnitary) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 0.1;
  EXPECT_THROW(UnitaryFrame::from_matrix(m), invalid_argument);
  EXPECT_THROW(UnitaryFrame::from_matrix(ComplexMatrix::Identity(2, 3)), invalid_argument);
}

TEST(TwoSpinTomogram, ReferenceStates) {
  std::mt19937_64 e(7);
  const auto b = two_spin_tomogram(bell(), qubits, {}, {});
  EXPECT_NEAR(b.probability(spin(1), spin(1)), 0.5, 1e-15);
  EXPECT_NEAR(b.probability(spin(-1), spin(-1)), 0.5, 1e-15);
  EXPECT_NEAR(b.probability(spin(1), spin(-1)), 0.0, 1e-15);
  EXPECT_NEAR(b.probability(spin(-1), spin(1)), 0.0, 1e-15);

  const auto mixed = two_spin_tomogram(DensityMatrix::maximally_mixed(4), qubits, random_angles(e), random_angles(e));
  EXPECT_LE((mixed.probabilities.array() - 0.25).abs().maxCoeff(), 1e-15);

  const BipartiteShape shape(spin(2), spin(1));
  const auto r1 = random_density(3, 3, 1), r2 = random_density(2, 1, 2);
  const EulerAngles a1 = random_angles(e), a2 = random_angles(e);
  const auto joint = two_spin_tomogram(tensor_product(r1, r2), shape, a1, a2);
  const auto p = spin_tomogram(r1, spin(2), a1).probabilities, q = spin_tomogram(r2, spin(1), a2).probabilities;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 2; ++k) EXPECT_NEAR(joint.probabilities(i, k), p[i] * q[k], 1e-14);
}

TEST(TwoSpinUnitaryTomogram, IdentityAndHadamardFrames) {
  const auto id = two_spin_unitary_tomogram(bell(), qubits, UnitaryFrame::identity(4));
  EXPECT_NEAR(id.probabilities(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(id.probabilities(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(id.probabilities(0, 1) + id.probabilities(1, 0), 0.0, 1e-15);

  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto hh = two_spin_unitary_tomogram(bell(), qubits, UnitaryFrame::from_matrix(kron(h, h)));
  EXPECT_NEAR(hh.probabilities(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(hh.probabilities(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(hh.probabilities(0, 1) + hh.probabilities(1, 0), 0.0, 1e-15);

  const BipartiteShape shape(spin(2), spin(1));
  const auto rho = random_density(6, 4, 9);
  const auto diag = two_spin_unitary_tomogram(rho, shape, UnitaryFrame::identity(6));
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(diag.probabilities(i / 2, i % 2), rho(i, i).real(), 1e-15);
  EXPECT_THROW(two_spin_unitary_tomogram(rho, shape, UnitaryFrame::identity(4)), dimension_mismatch);
}

TEST(TwoSpinTomogram, LocalRotationFrameAgrees) {
  std::mt19937_64 e(10);
  for (int t1 = 1; t1 <= 3; ++t1)
    for (int t2 = 1; t2 <= 3; ++t2) {
      const BipartiteShape shape(spin(t1), spin(t2));
      const auto rho = random_density(shape.dim(), shape.dim(), t1 * 10 + t2);
      const EulerAngles a1 = random_angles(e), a2 = random_angles(e);
      const auto local = two_spin_tomogram(rho, shape, a1, a2);
      const auto unitary = two_spin_unitary_tomogram(rho, shape, UnitaryFrame::local_rotation(shape, a1, a2));
      EXPECT_LE((local.probabilities - unitary.probabilities).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Marginal, ReferenceCases) {
  const auto uniform = two_spin_tomogram(DensityMatrix::maximally_mixed(4), qubits, {}, {});
  expect_probs(marginal(uniform, Subsystem::first).probabilities, {0.5, 0.5}, 1e-15);
  const auto b = two_spin_unitary_tomogram(bell(), qubits, UnitaryFrame::identity(4));
  expect_probs(marginal(b, Subsystem::first).probabilities, {0.5, 0.5}, 1e-15);
  expect_probs(marginal(b, Subsystem::second).probabilities, {0.5, 0.5}, 1e-15);

  const auto prod = two_spin_tomogram(tensor_product(DensityMatrix::diagonal({0.2, 0.8}), DensityMatrix::diagonal({0.6, 0.4})),
                                      qubits, {}, {});
  expect_probs(marginal(prod, Subsystem::first).probabilities, {0.2, 0.8}, 1e-15);
  expect_probs(marginal(prod, Subsystem::second).probabilities, {0.6, 0.4}, 1e-15);
}

TEST(Marginal, KeepsTheSpinFrameWithPsiCanonicalized) {
  const EulerAngles a1(0.1, 0.2, 0.3), a2(1.1, 1.2, 1.3);
  const auto t = two_spin_tomogram(DensityMatrix::maximally_mixed(4), qubits, a1, a2);
  EXPECT_EQ(std::get<EulerAngles>(marginal(t, Subsystem::first).frame), a1.with_psi(0));
  EXPECT_EQ(std::get<EulerAngles>(marginal(t, Subsystem::second).frame), a2.with_psi(0));
}

TEST(Conditional, ReferenceCases) {
  const auto b = two_spin_unitary_tomogram(bell(), qubits, UnitaryFrame::identity(4));
  expect_probs(conditional(b, Subsystem::second, spin(1)).probabilities, {1.0, 0.0}, 1e-15);
  expect_probs(conditional(b, Subsystem::first, spin(-1)).probabilities, {0.0, 1.0}, 1e-15);

  const auto prod = two_spin_tomogram(tensor_product(DensityMatrix::diagonal({0.2, 0.8}), DensityMatrix::diagonal({0.6, 0.4})),
                                      qubits, {}, {});
  for (int m : {1, -1}) expect_probs(conditional(prod, Subsystem::second, spin(m)).probabilities, {0.2, 0.8}, 1e-15);

  const auto uniform = two_spin_tomogram(DensityMatrix::maximally_mixed(4), qubits, {}, {});
  expect_probs(conditional(uniform, Subsystem::first, spin(1)).probabilities, {0.5, 0.5}, 1e-15);

  const auto up_up = two_spin_tomogram(DensityMatrix::diagonal({1, 0, 0, 0}), qubits, {}, {});
  EXPECT_THROW(conditional(up_up, Subsystem::first, spin(-1)), invalid_argument);
  EXPECT_THROW(conditional(up_up, Subsystem::first, spin(3)), invalid_argument);
}

TEST(SanitizeProbabilities, ClampsNoiseAndRejectsGarbage) {
  const auto p = sanitize_probabilities({-1e-13, 0.5, 0.5 + 1e-13});
  EXPECT_EQ(p[0], 0.0);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-15);
  EXPECT_THROW(sanitize_probabilities({-0.1, 1.1}), numerical_error);
  EXPECT_THROW(sanitize_probabilities({0.5, 0.4}), invalid_argument);
  EXPECT_THROW(sanitize_probabilities({NAN, 1.0}), numerical_error);
}

TEST(Reconstruction, ReferenceStates) {
  const auto up = DensityMatrix::diagonal({1, 0});
  EXPECT_LE(max_abs(reconstruct_density(tomogram_of(up, spin(1)), spin(1), quadrature_grid(2)).matrix() - up.matrix()), 1e-8);

  for (int tj = 0; tj <= 4; ++tj) {
    const auto mixed = DensityMatrix::maximally_mixed(tj + 1);
    for (int L : {0, 1, 2 * tj}) {
      const ComplexMatrix back = reconstruct_matrix(tomogram_of(mixed, spin(tj)), spin(tj), quadrature_grid(L));
      EXPECT_LE(max_abs(back - mixed.matrix()), 1e-10) << "2j=" << tj << " L=" << L;
    }
  }

  const auto rho = random_density(3, 3, 2024);
  EXPECT_LE(max_abs(reconstruct_density(tomogram_of(rho, spin(2)), spin(2), quadrature_grid(4)).matrix() - rho.matrix()),
            1e-8);
}

TEST(Reconstruction, RoundTripAcrossSpins) {
  for (int tj = 1; tj <= 6; ++tj) {
    const GroupQuadrature q = quadrature_grid(2 * tj);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto rho = random_density(tj + 1, tj + 1, 100 * tj + seed);
      EXPECT_LE(max_abs(reconstruct_matrix(tomogram_of(rho, spin(tj)), spin(tj), q) - rho.matrix()), 1e-10)
          << "2j=" << tj;
    }
  }
}

TEST(Reconstruction, UnderResolvedGridIsInaccurate) {
  const auto rho = random_density(3, 3, 2024);
  EXPECT_GT(max_abs(reconstruct_matrix(tomogram_of(rho, spin(2)), spin(2), quadrature_grid(1)) - rho.matrix()), 1e-3);
  EXPECT_THROW(reconstruct_density(tomogram_of(rho, spin(2)), spin(2), quadrature_grid(3)), invalid_argument);
}

TEST(Reconstruction, OnlyOneSignReadingInverts) {
  // Integer spin: both readings coincide. Half-integer spin: only (-1)^{i-m'} works.
  const auto r2 = random_density(3, 3, 5);
  const auto plus2 = reconstruct_matrix(tomogram_of(r2, spin(2)), spin(2), quadrature_grid(4), ReconstructionPhase::i_plus_mprime);
  EXPECT_LE(max_abs(plus2 - r2.matrix()), 1e-10);
  for (int tj : {1, 3}) {
    const auto rho = random_density(tj + 1, tj + 1, 6);
    const auto q = quadrature_grid(2 * tj);
    EXPECT_LE(max_abs(reconstruct_matrix(tomogram_of(rho, spin(tj)), spin(tj), q) - rho.matrix()), 1e-10);
    EXPECT_GT(max_abs(reconstruct_matrix(tomogram_of(rho, spin(tj)), spin(tj), q, ReconstructionPhase::i_plus_mprime) -
                      rho.matrix()),
              0.1);
  }
}

TEST(Reconstruction, RejectsForeignSamples) {
  const auto rho = DensityMatrix::maximally_mixed(3);
  EXPECT_THROW(reconstruct_matrix(tomogram_of(rho, spin(2)), spin(1), quadrature_grid(2)), dimension_mismatch);
}
