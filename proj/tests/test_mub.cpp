#include "qdiv/mub.hpp"

#include <cmath>

#include "doctest.h"
#include "qdiv/linalg.hpp"
#include "test_helpers.hpp"

using namespace qdiv;
using qdiv::testing::frob_dist;

namespace {

double max_orthonormality_error(const MubFamily& m) {
  double worst = 0.0;
  for (int alpha = 1; alpha <= m.basis_count(); ++alpha) {
    const Matrix gram = m.basis(alpha).adjoint() * m.basis(alpha);
    worst = std::max(worst, (gram - Matrix::Identity(m.dim(), m.dim())).cwiseAbs().maxCoeff());
  }
  return worst;
}

double max_unbiasedness_error(const MubFamily& m) {
  const double target = 1.0 / m.dim();
  double worst = 0.0;
  for (int a = 1; a <= m.basis_count(); ++a)
    for (int b = a + 1; b <= m.basis_count(); ++b) {
      const Matrix overlaps = m.basis(a).adjoint() * m.basis(b);
      for (Index i = 0; i < m.dim(); ++i)
        for (Index j = 0; j < m.dim(); ++j)
          worst = std::max(worst, std::abs(std::norm(overlaps(i, j)) - target));
    }
  return worst;
}

}  // namespace

TEST_SUITE("mub") {

TEST_CASE("qubit family is the sigma_3 / sigma_1 / sigma_2 eigenbasis set") {
  const MubFamily m = MubFamily::build(2);
  REQUIRE(m.basis_count() == 3);
  CHECK(frob_dist(m.basis(1), Matrix::Identity(2, 2)) == 0.0);
  // Every cross-basis overlap has squared magnitude 1/2.
  CHECK(max_unbiasedness_error(m) < 1e-15);
  // Basis 2 diagonalizes sigma_1, basis 3 diagonalizes sigma_2.
  const Matrix u2 = m.basis(2);
  CHECK(frob_dist(u2.adjoint() * sigma(1) * u2,
                  (Matrix(2, 2) << 1, 0, 0, -1).finished()) < 1e-14);
  const Matrix u3 = m.basis(3);
  CHECK(frob_dist(u3.adjoint() * sigma(2) * u3,
                  (Matrix(2, 2) << 1, 0, 0, -1).finished()) < 1e-14);
}

TEST_CASE("d = 3 family passes the overlap scan") {
  const MubFamily m = MubFamily::build(3);
  REQUIRE(m.basis_count() == 4);
  CHECK(max_orthonormality_error(m) < 1e-12);
  CHECK(max_unbiasedness_error(m) < 1e-12);
}

TEST_CASE("d = 6 has no maximal construction") {
  CHECK_THROWS_AS(MubFamily::build(6), ConfigError);
  CHECK_THROWS_WITH_AS(MubFamily::build(6),
                       doctest::Contains("no maximal MUB construction available"),
                       ConfigError);
}

TEST_CASE("projectors are rank-1, complete and idempotent") {
  const MubFamily m2 = MubFamily::build(2);
  CHECK(frob_dist(m2.projector(1, 0), matrix_unit(2, 0, 0)) == 0.0);

  for (int d : {2, 3, 5}) {
    const MubFamily m = MubFamily::build(d);
    for (int alpha = 1; alpha <= m.basis_count(); ++alpha) {
      Matrix sum = Matrix::Zero(d, d);
      for (int k = 0; k < d; ++k) sum += m.projector(alpha, k);
      CHECK(frob_dist(sum, Matrix::Identity(d, d)) < 1e-12);
    }
  }

  const MubFamily m3 = MubFamily::build(3);
  const Matrix p = m3.projector(2, 1);
  CHECK(std::abs(p.trace().real() - 1.0) < 1e-12);
  CHECK(frob_dist(p * p, p) < 1e-12);
  CHECK_THROWS_AS(m3.projector(5, 0), std::out_of_range);
  CHECK_THROWS_AS(m3.projector(1, 3), std::out_of_range);
}

TEST_CASE("unitary eigenvectors reproduce sigma_3 and have order d") {
  const MubFamily m2 = MubFamily::build(2);
  CHECK(frob_dist(m2.unitary_eigenvector(1, 1), sigma(3)) < 1e-15);
  CHECK(frob_dist(m2.unitary_eigenvector(1, 0), Matrix::Identity(2, 2)) < 1e-15);

  const MubFamily m3 = MubFamily::build(3);
  for (int alpha = 1; alpha <= 4; ++alpha) {
    const Matrix u = m3.unitary_eigenvector(alpha, 1);
    CHECK(frob_dist(u * u.adjoint(), Matrix::Identity(3, 3)) < 1e-12);
    CHECK(std::abs(u.trace()) < 1e-12);
    CHECK(frob_dist(u * u * u, Matrix::Identity(3, 3)) < 1e-12);
  }
}

TEST_CASE("identity plus unitary eigenvectors form a Hilbert-Schmidt orthogonal set") {
  for (int d : {2, 3, 4, 5}) {
    const MubFamily m = MubFamily::build(d);
    std::vector<Matrix> ops{Matrix::Identity(d, d)};
    for (int alpha = 1; alpha <= d + 1; ++alpha)
      for (int k = 1; k < d; ++k) ops.push_back(m.unitary_eigenvector(alpha, k));
    REQUIRE(static_cast<int>(ops.size()) == d * d);
    for (std::size_t a = 0; a < ops.size(); ++a)
      for (std::size_t b = 0; b <= a; ++b) {
        const Complex inner = (ops[a].adjoint() * ops[b]).trace();
        if (a == b)
          CHECK(std::abs(inner - Complex(d, 0)) < 1e-10);
        else
          CHECK(std::abs(inner) < 1e-10);
      }
  }
}

TEST_CASE("all supported dimensions build valid families") {
  for (int d : {2, 3, 4, 5, 7, 11, 13}) {
    const MubFamily m = MubFamily::build(d);
    REQUIRE(m.basis_count() == d + 1);
    CHECK(max_orthonormality_error(m) < 1e-12);
    CHECK(max_unbiasedness_error(m) < 1e-12);
  }
  CHECK(MubFamily::supported_dimension(31));
  CHECK_FALSE(MubFamily::supported_dimension(9));
  CHECK_FALSE(MubFamily::supported_dimension(37));
}

TEST_CASE("JSON export round-trips the basis entries") {
  const MubFamily m = MubFamily::build(3);
  const auto doc = m.to_json();
  CHECK(doc.at("dim") == 3);
  REQUIRE(doc.at("bases").size() == 4);
  const auto& first_vec = doc.at("bases")[1][0];
  REQUIRE(first_vec.size() == 3);
  const Complex z(first_vec[0][0].get<double>(), first_vec[0][1].get<double>());
  CHECK(std::abs(z - m.basis(2)(0, 0)) == 0.0);
}

}  // TEST_SUITE
