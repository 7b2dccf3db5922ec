#ifndef QDIV_RATES_HPP
#define QDIV_RATES_HPP

#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "qdiv/types.hpp"

namespace qdiv {

/// Time-dependent real decoherence rate, evaluable on [0, T]. Piecewise
/// variants expose their breakpoints so quadrature can split there.
class RateFunction {
 public:
  static RateFunction constant(double value);
  /// values.size() == breakpoints.size() + 1; value[i] holds on
  /// [breakpoints[i-1], breakpoints[i]).
  static RateFunction piecewise_constant(std::vector<double> breakpoints,
                                         std::vector<double> values);
  /// coeffs[k] multiplies t^k.
  static RateFunction polynomial(std::vector<double> coeffs);
  /// a * tanh(b * t) + c.
  static RateFunction tanh_profile(double a, double b, double c);
  /// Linear interpolation through (times[i], values[i]); clamped outside.
  static RateFunction sampled(std::vector<double> times, std::vector<double> values);
  /// sum_i coefficients[i] * terms[i](t).
  static RateFunction linear_combination(
      std::vector<std::pair<double, RateFunction>> terms);

  double operator()(double t) const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  struct Constant { double value; };
  struct Piecewise { std::vector<double> breakpoints, values; };
  struct Polynomial { std::vector<double> coeffs; };
  struct Tanh { double a, b, c; };
  struct Sampled { std::vector<double> times, values; };
  struct Combo {
    std::vector<std::pair<double, std::shared_ptr<const RateFunction>>> terms;
  };
  using Impl = std::variant<Constant, Piecewise, Polynomial, Tanh, Sampled, Combo>;

  explicit RateFunction(Impl impl, std::vector<double> breakpoints = {})
      : impl_(std::move(impl)), breakpoints_(std::move(breakpoints)) {}

  Impl impl_;
  std::vector<double> breakpoints_;
};

/// Adaptive-Simpson integral of r over [a, b] with absolute error <= tol.
/// Subdivision honors the rate's breakpoints. Throws NumericalError on
/// non-finite integrand values or failed refinement.
double integrate(const RateFunction& r, double a, double b,
                 double tol = defaults::quad_tol);

/// Gamma(t) = int_0^t gamma, cached on a uniform knot grid over [0, horizon]
/// (augmented with the rate's breakpoints); immutable after construction.
class AccumulatedRate {
 public:
  AccumulatedRate(RateFunction rate, double horizon, int knots = 256,
                  double tol = defaults::quad_tol);

  double operator()(double t) const;
  const RateFunction& rate() const { return rate_; }
  double horizon() const { return horizon_; }

 private:
  RateFunction rate_;
  double horizon_;
  double tol_;
  std::vector<double> knot_t_;
  std::vector<double> knot_gamma_;
};

/// int_0^t f(tau) * exp(w_plus(tau) + w_minus(tau) - exponent_shift) dtau.
/// Pass exponent_shift = w_plus(t) + w_minus(t) to evaluate the
/// exponentially weighted integral in a rescaled (overflow-safe) gauge.
/// Throws NumericalError when the exponent overflows double range.
double weighted_exp_integral(const RateFunction& f, const AccumulatedRate& w_plus,
                             const AccumulatedRate& w_minus, double t,
                             double tol = defaults::quad_tol,
                             double exponent_shift = 0.0);

}  // namespace qdiv

#endif  // QDIV_RATES_HPP
