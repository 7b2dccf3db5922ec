#ifndef QDIV_TEST_HELPERS_HPP
#define QDIV_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "qdiv/linalg.hpp"
#include "qdiv/types.hpp"

namespace qdiv::testing {

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline Matrix random_hermitian(Index d, std::mt19937_64& rng) {
  const Matrix a = random_matrix(d, d, rng);
  return 0.5 * (a + a.adjoint());
}

inline Matrix random_density(Index d, std::mt19937_64& rng) {
  const Matrix a = random_matrix(d, d, rng);
  const Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

/// Random trace-preserving CP map given as Kraus operators
/// (sum_j X_j^dagger X_j = I).
inline std::vector<Matrix> random_tp_kraus(Index d, int count, std::mt19937_64& rng) {
  std::vector<Matrix> kraus;
  Matrix gram = Matrix::Zero(d, d);
  for (int j = 0; j < count; ++j) {
    kraus.push_back(random_matrix(d, d, rng));
    gram += kraus.back().adjoint() * kraus.back();
  }
  // Normalize by the inverse square root of the Gram matrix.
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const Matrix inv_sqrt = es.operatorInverseSqrt();
  for (Matrix& x : kraus) x = x * inv_sqrt;
  return kraus;
}

inline double frob_dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace qdiv::testing

#endif  // QDIV_TEST_HELPERS_HPP
