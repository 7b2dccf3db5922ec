#ifndef QDIV_TYPES_HPP
#define QDIV_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdiv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Tri-state (plus non-invertible) answer of a divisibility question.
enum class Verdict { yes, no, unknown, indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "YES";
    case Verdict::no: return "NO";
    case Verdict::unknown: return "UNKNOWN";
    case Verdict::indeterminate: return "INDETERMINATE";
  }
  return "UNKNOWN";
}

/// Conjunction on the YES > UNKNOWN > NO lattice; any INDETERMINATE
/// degrades a YES summary to UNKNOWN.
inline Verdict meet(Verdict a, Verdict b) {
  if (a == Verdict::no || b == Verdict::no) return Verdict::no;
  if (a == Verdict::yes && b == Verdict::yes) return Verdict::yes;
  return Verdict::unknown;
}

/// Invalid or unsupported problem description (bad config, unsupported
/// dimension, arity mismatch).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical procedure failed (quadrature/ODE non-convergence, overflow,
/// violated matrix precondition).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

namespace defaults {
inline constexpr double hermiticity_tol = 1e-12;
inline constexpr double psd_tol = 1e-9;
inline constexpr double cert_tol = 1e-12;   // rate-inequality comparisons
inline constexpr double quad_tol = 1e-10;   // adaptive Simpson absolute error
inline constexpr double invertibility_floor = 1e-12;
}  // namespace defaults

}  // namespace qdiv

#endif  // QDIV_TYPES_HPP
