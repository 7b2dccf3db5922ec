#ifndef QDIV_LINALG_HPP
#define QDIV_LINALG_HPP

#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qdiv/types.hpp"

namespace qdiv {

/// Kronecker product with the first factor on the coarse (block) index:
/// kron(A, B)(i*p + m, j*q + n) = A(i,j) * B(m,n).
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

/// Column-stacking vectorization: vec(A)(i + j*rows) = A(i, j).
template <typename Derived>
Vector vectorize(const Eigen::MatrixBase<Derived>& a) {
  Matrix m = a;
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvectorize(const Vector& v, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

inline Matrix matrix_unit(Index d, Index i, Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = Complex(1.0, 0.0);
  return e;
}

/// sigma(0) = I, sigma(1..3) = Pauli matrices.
inline Matrix sigma(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::out_of_range("sigma index must be 0..3");
  }
  return m;
}

/// Linear map on d x d matrices stored as its d^2 x d^2 matrix acting on
/// column-vectorized arguments. Composition is the matrix product.
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(Index dim, Matrix rep) : dim_(dim), rep_(std::move(rep)) {
    if (rep_.rows() != dim_ * dim_ || rep_.cols() != dim_ * dim_)
      throw std::invalid_argument("superoperator representation must be d^2 x d^2");
  }

  static SuperOperator zero(Index d) { return {d, Matrix::Zero(d * d, d * d)}; }
  static SuperOperator identity(Index d) { return {d, Matrix::Identity(d * d, d * d)}; }

  /// rho -> l * rho * r, via vec(l rho r) = (r^T (x) l) vec(rho).
  static SuperOperator sandwich(const Matrix& l, const Matrix& r) {
    return {l.rows(), kron(r.transpose(), l)};
  }

  /// rho -> x * rho * x^dagger.
  static SuperOperator conjugation(const Matrix& x) {
    return sandwich(x, x.adjoint());
  }

  /// rho -> rho^T.
  static SuperOperator transposition(Index d) {
    Matrix k = Matrix::Zero(d * d, d * d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) k(i + j * d, j + i * d) = 1.0;
    return {d, std::move(k)};
  }

  Index dim() const { return dim_; }
  const Matrix& matrix() const { return rep_; }

  Matrix apply(const Matrix& a) const {
    return unvectorize(rep_ * vectorize(a), dim_, dim_);
  }

  SuperOperator compose(const SuperOperator& inner) const {
    return {dim_, rep_ * inner.rep_};
  }

  friend SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
    return {a.dim_, a.rep_ + b.rep_};
  }
  friend SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
    return {a.dim_, a.rep_ - b.rep_};
  }
  friend SuperOperator operator*(double c, const SuperOperator& s) {
    return {s.dim_, c * s.rep_};
  }

 private:
  Index dim_ = 0;
  Matrix rep_;
};

/// Choi matrix C = sum_ij E_ij (x) phi(E_ij); the first tensor factor
/// carries the matrix units.
class ChoiMatrix {
 public:
  ChoiMatrix() = default;
  ChoiMatrix(Index dim, Matrix m) : dim_(dim), m_(std::move(m)) {
    if (m_.rows() != dim_ * dim_ || m_.cols() != dim_ * dim_)
      throw std::invalid_argument("Choi matrix must be d^2 x d^2");
  }

  Index dim() const { return dim_; }
  const Matrix& matrix() const { return m_; }

 private:
  Index dim_ = 0;
  Matrix m_;
};

inline ChoiMatrix choi_of(const SuperOperator& s) {
  const Index d = s.dim();
  Matrix c(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      c.block(i * d, j * d, d, d) = unvectorize(s.matrix().col(i + j * d), d, d);
  return {d, std::move(c)};
}

inline SuperOperator superop_of(const ChoiMatrix& c) {
  const Index d = c.dim();
  Matrix rep(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      rep.col(i + j * d) = vectorize(Matrix(c.matrix().block(i * d, j * d, d, d)));
  return {d, std::move(rep)};
}

/// Transposes the second tensor factor blockwise.
inline ChoiMatrix partial_transpose(const ChoiMatrix& c) {
  const Index d = c.dim();
  Matrix out(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      out.block(i * d, j * d, d, d) =
          c.matrix().block(i * d, j * d, d, d).transpose();
  return {d, std::move(out)};
}

/// Trace over the second tensor factor; equals I_d iff the underlying map
/// is trace-preserving.
inline Matrix partial_trace_second(const ChoiMatrix& c) {
  const Index d = c.dim();
  Matrix out(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      out(i, j) = c.matrix().block(i * d, j * d, d, d).trace();
  return out;
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& h,
                       double tol = defaults::hermiticity_tol) {
  const double scale = std::max(1.0, h.norm());
  if ((h - h.adjoint()).norm() > tol * scale)
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
}

inline RealVector hermitian_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// True iff min eigenvalue >= -tol * max(1, spectral norm). Throws on
/// non-Hermitian input.
inline bool is_psd(const Matrix& h, double tol = defaults::psd_tol) {
  require_hermitian(h);
  const RealVector ev = hermitian_eigenvalues(h);
  const double spectral = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol * std::max(1.0, spectral);
}

inline bool is_psd(const ChoiMatrix& c, double tol = defaults::psd_tol) {
  return is_psd(c.matrix(), tol);
}

inline double min_eigenvalue(const Matrix& h) {
  return hermitian_eigenvalues(h)(0);
}

/// Kraus operators of the CP map encoded by a PSD Choi matrix; eigenvalues
/// <= tol * (max eigenvalue) are dropped, so the count equals the numerical
/// rank. Throws NumericalError when C is not PSD within tol.
inline std::vector<Matrix> kraus_from_choi(const ChoiMatrix& c,
                                           double tol = defaults::psd_tol) {
  require_hermitian(c.matrix());
  const Index d = c.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> es(c.matrix());
  const RealVector ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  const double scale = std::max(std::abs(ev(0)), std::abs(top));
  if (ev(0) < -tol * std::max(1.0, scale))
    throw NumericalError("Choi matrix is not positive semidefinite; no Kraus decomposition");
  std::vector<Matrix> kraus;
  for (Index n = 0; n < ev.size(); ++n) {
    if (ev(n) <= tol * std::max(0.0, top)) continue;
    // Eigenvector components v(i*d + m) = X(m, i), i.e. X = unvec(v).
    kraus.push_back(std::sqrt(ev(n)) * unvectorize(es.eigenvectors().col(n), d, d));
  }
  return kraus;
}

inline SuperOperator superop_from_kraus(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("empty Kraus set");
  SuperOperator s = SuperOperator::zero(kraus.front().rows());
  for (const Matrix& x : kraus) s = s + SuperOperator::conjugation(x);
  return s;
}

}  // namespace qdiv

#endif  // QDIV_LINALG_HPP
