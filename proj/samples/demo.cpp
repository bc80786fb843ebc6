// Walks through the main operations on a spin-1 state and a Bell pair.

#include <iostream>

#include "spintomo/spintomo.hpp"

int main() {
  using namespace spintomo;

  const HalfInteger j = HalfInteger::parse("1");
  const DensityMatrix rho = random_density(multiplicity(j), 2, 7);

  // Tomogram along the direction (theta, phi) = (pi/3, pi/4).
  const SpinTomogram t = spin_tomogram(rho, j, {pi / 4, pi / 3, 0.0});
  std::cout << "tomogram:";
  for (double p : t.probabilities) std::cout << ' ' << p;
  std::cout << "\ntomographic entropy: " << tomographic_entropy(t) << '\n';

  // Back to the density matrix from tomograms alone.
  const DensityMatrix back = reconstruct_density(tomogram_of(rho, j), j, quadrature_grid(4));
  std::cout << "reconstruction error: " << max_abs(back.matrix() - rho.matrix()) << '\n';

  // The minimum over unitary frames is the von Neumann entropy.
  const MinimizationResult m = minimize(rho, {});
  std::cout << "min S(U) = " << m.best_entropy << ", S_N = " << m.von_neumann << '\n';

  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const BipartiteShape qubits(HalfInteger::parse("1/2"), HalfInteger::parse("1/2"));
  const JointTomogram jt = two_spin_unitary_tomogram(from_pure(PureState::from_amplitudes(bell)), qubits,
                                                     UnitaryFrame::identity(4));
  std::cout << "Bell pair mutual information: " << tomographic_mutual_information(jt) << " (ln 2 = " << ln2
            << ")\n";
}
