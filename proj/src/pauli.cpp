#include "qdiv/pauli.hpp"

#include <cmath>

namespace qdiv::pauli {

PauliEigenvalues eigenvalues_at(const PauliRates& r, double t, double tol) {
  const std::array<double, 3> gammas = {integrate(r.g1, 0.0, t, tol),
                                        integrate(r.g2, 0.0, t, tol),
                                        integrate(r.g3, 0.0, t, tol)};
  return eigenvalues_from_accumulated(gammas);
}

PauliEigenvalues eigenvalues_from_accumulated(const std::array<double, 3>& gammas) {
  const double total = gammas[0] + gammas[1] + gammas[2];
  return {std::exp(-(total - gammas[0])), std::exp(-(total - gammas[1])),
          std::exp(-(total - gammas[2]))};
}

std::array<double, 4> probabilities_from_eigenvalues(const PauliEigenvalues& l) {
  const double sum = l.l1 + l.l2 + l.l3;
  return {0.25 * (1.0 + sum), 0.25 * (1.0 + 2.0 * l.l1 - sum),
          0.25 * (1.0 + 2.0 * l.l2 - sum), 0.25 * (1.0 + 2.0 * l.l3 - sum)};
}

PauliEigenvalues eigenvalues_from_probabilities(const std::array<double, 4>& p) {
  return {p[0] + p[1] - p[2] - p[3], p[0] - p[1] + p[2] - p[3],
          p[0] - p[1] - p[2] + p[3]};
}

Matrix apply_channel(const std::array<double, 4>& p, const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2)
    throw std::invalid_argument("Pauli channel acts on 2x2 matrices");
  Matrix out = Matrix::Zero(2, 2);
  for (int a = 0; a < 4; ++a) out += p[a] * sigma(a) * rho * sigma(a);
  return out;
}

SuperOperator channel_superoperator(const std::array<double, 4>& p) {
  SuperOperator s = SuperOperator::zero(2);
  for (int a = 0; a < 4; ++a) s = s + p[a] * SuperOperator::conjugation(sigma(a));
  return s;
}

JCoefficients j_from_rates(const std::array<double, 3>& g) {
  const double sum = g[0] + g[1] + g[2];
  return {sum - g[0], sum - g[1], sum - g[2]};
}

std::array<double, 3> rates_from_j(const JCoefficients& j) {
  const double half_sum = 0.5 * (j.j1 + j.j2 + j.j3);
  return {half_sum - j.j1, half_sum - j.j2, half_sum - j.j3};
}

PointwiseClass classify_pointwise(const std::array<double, 3>& g, double tol) {
  const bool cp = g[0] >= -tol && g[1] >= -tol && g[2] >= -tol;
  const bool p = g[0] + g[1] >= -tol && g[0] + g[2] >= -tol && g[1] + g[2] >= -tol;
  // Pairwise sums are exactly the j coefficients, so d == p identically.
  const JCoefficients j = j_from_rates(g);
  const bool d = j.j1 >= -tol && j.j2 >= -tol && j.j3 >= -tol;
  return {cp, p, d};
}

SuperOperator dissipator(int a) {
  return 0.5 * (SuperOperator::conjugation(sigma(a)) - SuperOperator::identity(2));
}

SuperOperator generator_from_rates(const std::array<double, 3>& g) {
  SuperOperator l = SuperOperator::zero(2);
  for (int a = 0; a < 3; ++a) l = l + g[a] * dissipator(a + 1);
  return l;
}

CoCpGeneratorParts cocp_generator_parts() {
  const SuperOperator theta = SuperOperator::transposition(2);
  const std::array<SuperOperator, 3> phi = {
      theta.compose(SuperOperator::conjugation(sigma(3))),
      theta,
      theta.compose(SuperOperator::conjugation(sigma(1))),
  };
  const SuperOperator id = SuperOperator::identity(2);
  return {phi,
          {0.5 * (phi[0] - id), 0.5 * (phi[1] - id), 0.5 * (phi[2] - id)}};
}

}  // namespace qdiv::pauli
