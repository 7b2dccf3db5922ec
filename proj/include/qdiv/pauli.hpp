#ifndef QDIV_PAULI_HPP
#define QDIV_PAULI_HPP

#include <array>

#include "qdiv/linalg.hpp"
#include "qdiv/rates.hpp"
#include "qdiv/types.hpp"

namespace qdiv::pauli {

/// Decoherence rates of the unital qubit generator
/// L_t = sum_a gamma_a(t) L_a with L_a(rho) = (sigma_a rho sigma_a - rho)/2.
struct PauliRates {
  RateFunction g1, g2, g3;
};

/// Eigenvalues of the dynamical map on sigma_1..sigma_3. Each starts at 1
/// and stays positive (exponential form).
struct PauliEigenvalues {
  double l1, l2, l3;
};

/// Coefficients of the generator rewritten over the decomposable building
/// blocks G_a; all nonnegative iff the flow stays decomposably divisible.
struct JCoefficients {
  double j1, j2, j3;
};

/// lambda_k(t) = exp(-int_0^t (gamma_0 - gamma_k)), gamma_0 = g1+g2+g3.
PauliEigenvalues eigenvalues_at(const PauliRates& r, double t,
                                double tol = defaults::quad_tol);

/// Same map evaluated from precomputed Gamma_k(t) = int_0^t gamma_k.
PauliEigenvalues eigenvalues_from_accumulated(const std::array<double, 3>& gammas);

/// p0 = (1 + sum l)/4, pk = (1 + 2 l_k - sum l)/4. Entries may be negative
/// when the map is not CP at that time; the sum is always 1.
std::array<double, 4> probabilities_from_eigenvalues(const PauliEigenvalues& l);

PauliEigenvalues eigenvalues_from_probabilities(const std::array<double, 4>& p);

/// sum_a p_a sigma_a rho sigma_a.
Matrix apply_channel(const std::array<double, 4>& p, const Matrix& rho);

SuperOperator channel_superoperator(const std::array<double, 4>& p);

/// j_a = sum_b gamma_b - gamma_a.
JCoefficients j_from_rates(const std::array<double, 3>& g);

/// gamma_a = (sum_b j_b)/2 - j_a; exact inverse of j_from_rates.
std::array<double, 3> rates_from_j(const JCoefficients& j);

struct PointwiseClass {
  bool cp;  // all rates >= 0
  bool p;   // all pairwise rate sums >= 0
  bool d;   // all j_a >= 0 (coincides with p for qubits)
};

PointwiseClass classify_pointwise(const std::array<double, 3>& g,
                                  double tol = defaults::cert_tol);

/// L_a(rho) = (sigma_a rho sigma_a - rho)/2.
SuperOperator dissipator(int a);

/// L_t at fixed rate values.
SuperOperator generator_from_rates(const std::array<double, 3>& g);

/// The three completely copositive maps behind the decomposable building
/// blocks: phi_1 = transpose of sigma_3-conjugation, phi_2 = transpose,
/// phi_3 = transpose of sigma_1-conjugation. The generator basis is
/// g[a] = (phi[a] - id)/2 = sum_b L_b / 2 - L_a, the normalization under
/// which L_t = sum_a j_a g[a] reproduces j_a = sum_b gamma_b - gamma_a.
struct CoCpGeneratorParts {
  std::array<SuperOperator, 3> phi;
  std::array<SuperOperator, 3> g;
};

CoCpGeneratorParts cocp_generator_parts();

}  // namespace qdiv::pauli

#endif  // QDIV_PAULI_HPP
