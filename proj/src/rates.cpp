#include "qdiv/rates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace qdiv {
namespace {

constexpr int kMaxDepth = 40;

double poly_eval(const std::vector<double>& coeffs, double t) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double t) {
  if (t <= xs.front()) return ys.front();
  if (t >= xs.back()) return ys.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

struct Quad {
  const std::function<double(double)>& f;

  double simpson(double a, double fa, double b, double fb, double fm) const {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double adaptive(double a, double fa, double b, double fb, double m, double fm,
                  double whole, double tol, int depth) const {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm))
      throw NumericalError("non-finite rate value encountered during quadrature");
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol || depth >= kMaxDepth)
      return left + right + err / 15.0;
    return adaptive(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           adaptive(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
  }

  double operator()(double a, double b, double tol) const {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
      throw NumericalError("non-finite rate value encountered during quadrature");
    return adaptive(a, fa, b, fb, m, fm, simpson(a, fa, b, fb, fm), tol, 0);
  }
};

double integrate_with_breakpoints(const std::function<double(double)>& f,
                                  const std::vector<double>& breakpoints, double a,
                                  double b, double tol) {
  if (a > b) throw std::invalid_argument("integration bounds must satisfy a <= b");
  if (a == b) return 0.0;
  std::set<double> cuts{a, b};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.insert(x);
  const Quad quad{f};
  const double span = b - a;
  double total = 0.0;
  double prev = a;
  for (auto it = std::next(cuts.begin()); it != cuts.end(); ++it) {
    const double seg_tol = std::max(tol * (*it - prev) / span, 1e-16);
    total += quad(prev, *it, seg_tol);
    prev = *it;
  }
  return total;
}

}  // namespace

RateFunction RateFunction::constant(double value) {
  return RateFunction(Constant{value});
}

RateFunction RateFunction::piecewise_constant(std::vector<double> breakpoints,
                                              std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1)
    throw std::invalid_argument("piecewise rate needs breakpoints.size()+1 values");
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
    throw std::invalid_argument("piecewise breakpoints must be sorted");
  auto bp = breakpoints;
  return RateFunction(Piecewise{std::move(breakpoints), std::move(values)},
                      std::move(bp));
}

RateFunction RateFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return RateFunction(Polynomial{std::move(coeffs)});
}

RateFunction RateFunction::tanh_profile(double a, double b, double c) {
  return RateFunction(Tanh{a, b, c});
}

RateFunction RateFunction::sampled(std::vector<double> times,
                                   std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw std::invalid_argument("sampled rate needs >= 2 matching times/values");
  if (!std::is_sorted(times.begin(), times.end()))
    throw std::invalid_argument("sampled times must be sorted");
  auto bp = times;
  return RateFunction(Sampled{std::move(times), std::move(values)}, std::move(bp));
}

RateFunction RateFunction::linear_combination(
    std::vector<std::pair<double, RateFunction>> terms) {
  Combo combo;
  std::set<double> bp;
  for (auto& [c, r] : terms) {
    for (double x : r.breakpoints()) bp.insert(x);
    combo.terms.emplace_back(c, std::make_shared<const RateFunction>(std::move(r)));
  }
  return RateFunction(std::move(combo), std::vector<double>(bp.begin(), bp.end()));
}

double RateFunction::operator()(double t) const {
  return std::visit(
      [t](const auto& impl) -> double {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return impl.value;
        } else if constexpr (std::is_same_v<T, Piecewise>) {
          const auto it =
              std::upper_bound(impl.breakpoints.begin(), impl.breakpoints.end(), t);
          return impl.values[static_cast<std::size_t>(it - impl.breakpoints.begin())];
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          return poly_eval(impl.coeffs, t);
        } else if constexpr (std::is_same_v<T, Tanh>) {
          return impl.a * std::tanh(impl.b * t) + impl.c;
        } else if constexpr (std::is_same_v<T, Sampled>) {
          return interp(impl.times, impl.values, t);
        } else {
          double acc = 0.0;
          for (const auto& [c, r] : impl.terms) acc += c * (*r)(t);
          return acc;
        }
      },
      impl_);
}

double integrate(const RateFunction& r, double a, double b, double tol) {
  return integrate_with_breakpoints([&r](double t) { return r(t); },
                                    r.breakpoints(), a, b, tol);
}

AccumulatedRate::AccumulatedRate(RateFunction rate, double horizon, int knots,
                                 double tol)
    : rate_(std::move(rate)), horizon_(horizon), tol_(tol) {
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be positive");
  if (knots < 2) knots = 2;
  std::set<double> ts;
  for (int i = 0; i < knots; ++i)
    ts.insert(horizon * static_cast<double>(i) / (knots - 1));
  for (double x : rate_.breakpoints())
    if (x > 0.0 && x < horizon) ts.insert(x);
  knot_t_.assign(ts.begin(), ts.end());
  knot_gamma_.resize(knot_t_.size());
  knot_gamma_[0] = 0.0;
  const double seg_tol = tol_ / static_cast<double>(knot_t_.size());
  for (std::size_t i = 1; i < knot_t_.size(); ++i)
    knot_gamma_[i] =
        knot_gamma_[i - 1] + integrate(rate_, knot_t_[i - 1], knot_t_[i], seg_tol);
}

double AccumulatedRate::operator()(double t) const {
  if (t == 0.0) return 0.0;
  if (t < 0.0) throw std::invalid_argument("accumulated rate requires t >= 0");
  const auto it = std::upper_bound(knot_t_.begin(), knot_t_.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - knot_t_.begin()) - 1;
  if (knot_t_[idx] == t) return knot_gamma_[idx];
  return knot_gamma_[idx] + integrate(rate_, knot_t_[idx], t, tol_);
}

double weighted_exp_integral(const RateFunction& f, const AccumulatedRate& w_plus,
                             const AccumulatedRate& w_minus, double t, double tol,
                             double exponent_shift) {
  if (t < 0.0) throw std::invalid_argument("weighted integral requires t >= 0");
  if (t == 0.0) return 0.0;
  auto integrand = [&](double tau) {
    const double expo = w_plus(tau) + w_minus(tau) - exponent_shift;
    if (expo > 700.0)
      throw NumericalError(
          "exponential weight overflows double range; rescale the time horizon "
          "or pass an exponent shift");
    return f(tau) * std::exp(expo);
  };
  std::set<double> bp(f.breakpoints().begin(), f.breakpoints().end());
  for (double x : w_plus.rate().breakpoints()) bp.insert(x);
  for (double x : w_minus.rate().breakpoints()) bp.insert(x);
  return integrate_with_breakpoints(integrand,
                                    std::vector<double>(bp.begin(), bp.end()), 0.0,
                                    t, tol);
}

}  // namespace qdiv
