#include "qdiv/rates.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

using namespace qdiv;

TEST_SUITE("rates") {

TEST_CASE("constant rate integrates exactly") {
  const RateFunction one = RateFunction::constant(1.0);
  CHECK(integrate(one, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("tanh profile matches the closed-form antiderivative") {
  // int_0^t -tanh = -log cosh t.
  const RateFunction r = RateFunction::tanh_profile(-1.0, 1.0, 0.0);
  for (double t : {0.25, 1.0, 3.0}) {
    CHECK(integrate(r, 0.0, t, 1e-12) ==
          doctest::Approx(-std::log(std::cosh(t))).epsilon(1e-11));
  }
  CHECK(integrate(r, 0.0, 1.0, 1e-12) ==
        doctest::Approx(-0.433780830483997).epsilon(1e-12));
}

TEST_CASE("piecewise rate integrates across its breakpoint") {
  const RateFunction r = RateFunction::piecewise_constant({1.0}, {1.0, -1.0});
  CHECK(std::abs(integrate(r, 0.0, 2.0)) < 1e-11);
  CHECK(std::abs(integrate(r, 0.5, 1.5)) < 1e-11);
  CHECK(integrate(r, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("integration is additive over adjacent intervals") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  const RateFunction r = RateFunction::tanh_profile(unif(rng), unif(rng), -0.3);
  const double a = 0.0, m = unif(rng), b = m + unif(rng);
  const double whole = integrate(r, a, b, 1e-12);
  const double split = integrate(r, a, m, 1e-12) + integrate(r, m, b, 1e-12);
  CHECK(whole == doctest::Approx(split).epsilon(1e-12));
}

TEST_CASE("Simpson is exact for cubics") {
  const RateFunction r = RateFunction::polynomial({1.0, -2.0, 3.0, 4.0});
  // int_0^2 (1 - 2t + 3t^2 + 4t^3) = 2 - 4 + 8 + 16 = 22.
  CHECK(integrate(r, 0.0, 2.0) == doctest::Approx(22.0).epsilon(1e-13));
}

TEST_CASE("sampled rate interpolates linearly") {
  const RateFunction r = RateFunction::sampled({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  CHECK(r(0.5) == doctest::Approx(0.5));
  CHECK(r(1.5) == doctest::Approx(0.5));
  CHECK(r(5.0) == doctest::Approx(0.0));  // clamped
  CHECK(integrate(r, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linear combinations evaluate and expose breakpoints") {
  const RateFunction combo = RateFunction::linear_combination(
      {{2.0, RateFunction::constant(1.0)},
       {-1.0, RateFunction::piecewise_constant({1.0}, {0.0, 4.0})}});
  CHECK(combo(0.5) == doctest::Approx(2.0));
  CHECK(combo(1.5) == doctest::Approx(-2.0));
  REQUIRE(combo.breakpoints().size() == 1);
  CHECK(combo.breakpoints()[0] == 1.0);
}

TEST_CASE("accumulated rate starts at zero and is additive") {
  const AccumulatedRate acc(RateFunction::tanh_profile(1.0, 2.0, 0.5), 4.0);
  CHECK(acc(0.0) == 0.0);
  const double direct = integrate(acc.rate(), 0.0, 2.7, 1e-12);
  CHECK(acc(2.7) == doctest::Approx(direct).epsilon(1e-10));
  CHECK(acc(3.1) - acc(1.4) ==
        doctest::Approx(integrate(acc.rate(), 1.4, 3.1, 1e-12)).epsilon(1e-10));
}

TEST_CASE("weighted integral vanishes for equal rates and at t = 0") {
  const RateFunction zero = RateFunction::constant(0.0);
  const AccumulatedRate gp(RateFunction::constant(0.7), 3.0);
  const AccumulatedRate gm(RateFunction::constant(0.7), 3.0);
  CHECK(weighted_exp_integral(zero, gp, gm, 2.0) == doctest::Approx(0.0));
  const RateFunction f = RateFunction::constant(1.0);
  CHECK(weighted_exp_integral(f, gp, gm, 0.0) == 0.0);
}

TEST_CASE("weighted integral matches the closed form for constant rates") {
  // f = a, w = a t: int_0^t a e^(a tau) = e^(a t) - 1.
  const double a = 0.8;
  const RateFunction f = RateFunction::constant(a);
  const AccumulatedRate gp(RateFunction::constant(a), 5.0);
  const AccumulatedRate gm(RateFunction::constant(0.0), 5.0);
  for (double t : {0.5, 2.0, 4.5}) {
    CHECK(weighted_exp_integral(f, gp, gm, t, 1e-12) ==
          doctest::Approx(std::exp(a * t) - 1.0).epsilon(1e-11));
  }
}

TEST_CASE("weighted integral reports exponent overflow") {
  const RateFunction f = RateFunction::constant(1.0);
  const AccumulatedRate big(RateFunction::constant(500.0), 2.0);
  CHECK_THROWS_AS(weighted_exp_integral(f, big, big, 2.0), NumericalError);
  // A shift restores the overflow-safe gauge.
  const double shifted = weighted_exp_integral(f, big, big, 2.0, 1e-10, 2000.0);
  CHECK(std::isfinite(shifted));
}

TEST_CASE("non-finite rate values are rejected") {
  const double inf = std::numeric_limits<double>::infinity();
  const RateFunction bad = RateFunction::sampled({0.0, 1.0}, {0.0, inf});
  CHECK_THROWS_AS(integrate(bad, 0.0, 1.0), NumericalError);
}

}  // TEST_SUITE
