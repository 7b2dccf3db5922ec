#ifndef QDIV_MUB_HPP
#define QDIV_MUB_HPP

#include <vector>

#include "qdiv/types.hpp"

#include "json.hpp"

namespace qdiv {

/// Maximal family of d+1 mutually unbiased bases of C^d. Basis indices are
/// 1-based (alpha in 1..d+1, basis 1 is the computational basis); vector
/// indices k are 0-based. Immutable after construction.
class MubFamily {
 public:
  /// Supported dimensions: primes <= 31 and d = 4. Throws ConfigError for
  /// anything else ("no maximal MUB construction available").
  static MubFamily build(int d);
  static bool supported_dimension(int d);

  int dim() const { return d_; }
  int basis_count() const { return d_ + 1; }

  /// d x d matrix whose columns are the basis vectors of B_alpha.
  const Matrix& basis(int alpha) const;

  /// Rank-1 projector |psi_k^(alpha)><psi_k^(alpha)|.
  Matrix projector(int alpha, int k) const;

  /// U_alpha^k = sum_l omega^(k l) P_l^(alpha), omega = exp(2 pi i / d).
  /// k = 0 is the degenerate case and returns the identity.
  Matrix unitary_eigenvector(int alpha, int k) const;

  nlohmann::json to_json() const;

 private:
  MubFamily(int d, std::vector<Matrix> bases) : d_(d), bases_(std::move(bases)) {}

  int d_ = 0;
  std::vector<Matrix> bases_;
};

}  // namespace qdiv

#endif  // QDIV_MUB_HPP
