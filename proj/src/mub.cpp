#include "qdiv/mub.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qdiv {
namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// Columns of B_{a+2} are psi_k with components omega^(a l^2 + k l) / sqrt(d);
// for odd prime d the quadratic Gauss sum makes distinct a's unbiased.
std::vector<Matrix> odd_prime_family(int d) {
  std::vector<Matrix> bases;
  bases.push_back(Matrix::Identity(d, d));
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int a = 0; a < d; ++a) {
    Matrix b(d, d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        const int phase = (a * l * l + k * l) % d;
        const double arg = 2.0 * std::numbers::pi * phase / d;
        b(l, k) = norm * Complex(std::cos(arg), std::sin(arg));
      }
    bases.push_back(std::move(b));
  }
  return bases;
}

std::vector<Matrix> qubit_family() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix hadamard(2, 2), circular(2, 2);
  hadamard << s, s, s, -s;
  circular << s, s, Complex(0, s), Complex(0, -s);
  return {Matrix::Identity(2, 2), hadamard, circular};
}

// Fixed table for d = 4 (two-qubit Galois family); entries are powers of i
// scaled by 1/2, rows of the table are the basis vectors.
std::vector<Matrix> dim4_family() {
  // 0 -> 1, 1 -> i, 2 -> -1, 3 -> -i
  static constexpr int table[4][4][4] = {
      {{0, 0, 0, 0}, {0, 0, 2, 2}, {0, 2, 2, 0}, {0, 2, 0, 2}},
      {{0, 2, 3, 3}, {0, 2, 1, 1}, {0, 0, 1, 3}, {0, 0, 3, 1}},
      {{0, 3, 3, 2}, {0, 3, 1, 0}, {0, 1, 1, 2}, {0, 1, 3, 0}},
      {{0, 3, 2, 3}, {0, 3, 0, 1}, {0, 1, 0, 3}, {0, 1, 2, 1}},
  };
  static const Complex unit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<Matrix> bases;
  bases.push_back(Matrix::Identity(4, 4));
  for (const auto& basis : table) {
    Matrix b(4, 4);
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) b(l, k) = 0.5 * unit[basis[k][l]];
    bases.push_back(std::move(b));
  }
  return bases;
}

}  // namespace

bool MubFamily::supported_dimension(int d) {
  return d == 4 || (is_prime(d) && d <= 31);
}

MubFamily MubFamily::build(int d) {
  if (!supported_dimension(d))
    throw ConfigError("no maximal MUB construction available for d = " +
                      std::to_string(d) +
                      " (supported: primes <= 31 and d = 4)");
  if (d == 2) return MubFamily(2, qubit_family());
  if (d == 4) return MubFamily(4, dim4_family());
  return MubFamily(d, odd_prime_family(d));
}

const Matrix& MubFamily::basis(int alpha) const {
  if (alpha < 1 || alpha > d_ + 1)
    throw std::out_of_range("MUB basis index must be in 1..d+1");
  return bases_[static_cast<std::size_t>(alpha - 1)];
}

Matrix MubFamily::projector(int alpha, int k) const {
  if (k < 0 || k >= d_) throw std::out_of_range("MUB vector index must be in 0..d-1");
  const auto v = basis(alpha).col(k);
  return v * v.adjoint();
}

Matrix MubFamily::unitary_eigenvector(int alpha, int k) const {
  if (k < 0 || k >= d_) throw std::out_of_range("MUB power index must be in 0..d-1");
  Matrix u = Matrix::Zero(d_, d_);
  for (int l = 0; l < d_; ++l) {
    const double arg = 2.0 * std::numbers::pi * ((k * l) % d_) / d_;
    u += Complex(std::cos(arg), std::sin(arg)) * projector(alpha, l);
  }
  return u;
}

nlohmann::json MubFamily::to_json() const {
  nlohmann::json bases = nlohmann::json::array();
  for (int alpha = 1; alpha <= d_ + 1; ++alpha) {
    nlohmann::json vecs = nlohmann::json::array();
    for (int k = 0; k < d_; ++k) {
      nlohmann::json comps = nlohmann::json::array();
      for (int l = 0; l < d_; ++l) {
        const Complex z = basis(alpha)(l, k);
        comps.push_back({z.real(), z.imag()});
      }
      vecs.push_back(comps);
    }
    bases.push_back(vecs);
  }
  return {{"dim", d_}, {"bases", bases}};
}

}  // namespace qdiv
