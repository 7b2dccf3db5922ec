#include "qdiv/phasecov.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace qdiv;
using namespace qdiv::phasecov;
using qdiv::testing::frob_dist;

namespace {

// Scalar RK4 for the Bloch-z equation dz/dt = -(g+ + g-) z + (g+ - g-).
double bloch_z_ode(const PhaseCovRates& r, double z0, double t, int steps) {
  auto f = [&r](double tau, double z) {
    const double gp = r.g_plus(tau), gm = r.g_minus(tau);
    return -(gp + gm) * z + (gp - gm);
  };
  double z = z0, tau = 0.0;
  const double h = t / steps;
  for (int n = 0; n < steps; ++n) {
    const double k1 = f(tau, z);
    const double k2 = f(tau + 0.5 * h, z + 0.5 * h * k1);
    const double k3 = f(tau + 0.5 * h, z + 0.5 * h * k2);
    const double k4 = f(tau + h, z + h * k3);
    z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    tau += h;
  }
  return z;
}

}  // namespace

TEST_SUITE("phasecov") {

TEST_CASE("equal raising and lowering rates keep the map unital") {
  const PhaseCovRates r{RateFunction::tanh_profile(0.8, 1.0, 0.2),
                        RateFunction::tanh_profile(0.8, 1.0, 0.2),
                        RateFunction::constant(0.5)};
  for (double t : {0.4, 1.0, 2.0}) {
    const PhaseCovParams p = params_at(r, t);
    CHECK(std::abs(p.lstar) < 1e-12);
  }
}

TEST_CASE("amplitude damping has the closed-form parameters") {
  const double a = 1.0;
  const PhaseCovRates r{RateFunction::constant(a), RateFunction::constant(0.0),
                        RateFunction::constant(0.0)};
  for (double t : {0.0, 0.5, 1.5, 4.0}) {
    const PhaseCovParams p = params_at(r, t, 1e-12);
    CHECK(p.l3 == doctest::Approx(std::exp(-a * t)).epsilon(1e-11));
    CHECK(p.l1 == doctest::Approx(std::exp(-0.5 * a * t)).epsilon(1e-11));
    CHECK(p.lstar == doctest::Approx(1.0 - std::exp(-a * t)).epsilon(1e-11));
  }
  const PhaseCovParams p0 = params_at(r, 0.0);
  CHECK(p0.l1 == 1.0);
  CHECK(p0.l3 == 1.0);
  CHECK(p0.lstar == 0.0);
}

TEST_CASE("apply_map acts on the Bloch vector as advertised") {
  std::mt19937_64 rng(5);
  const Matrix rho = qdiv::testing::random_density(2, rng);
  CHECK(frob_dist(apply_map({1.0, 1.0, 0.0}, rho), rho) < 1e-14);

  const Matrix ground = 0.5 * (Matrix::Identity(2, 2) + sigma(3));
  CHECK(frob_dist(apply_map({0.0, 0.0, 1.0}, rho), rho.trace() * ground) < 1e-14);

  const Matrix plus = 0.5 * (Matrix::Identity(2, 2) + sigma(1));
  const Matrix expected = 0.5 * (Matrix::Identity(2, 2) + 0.5 * sigma(1));
  CHECK(frob_dist(apply_map({0.5, 0.5, 0.0}, plus), expected) < 1e-14);
}

TEST_CASE("apply_map preserves trace and Hermiticity") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const PhaseCovParams p{unif(rng), unif(rng), unif(rng)};
    const Matrix x = qdiv::testing::random_hermitian(2, rng);
    const Matrix out = apply_map(p, x);
    CHECK(std::abs(out.trace() - x.trace()) < 1e-14);
    CHECK(frob_dist(out, out.adjoint()) < 1e-14);
  }
}

TEST_CASE("stationary state is fixed by the map") {
  CHECK(frob_dist(stationary_state(0.3, 0.0), 0.5 * Matrix::Identity(2, 2)) < 1e-15);
  // Amplitude-damping long-time limit: l3 -> 0, lstar -> 1 fixes |0><0|.
  const Matrix ground = 0.5 * (Matrix::Identity(2, 2) + sigma(3));
  CHECK(frob_dist(stationary_state(0.0, 1.0), ground) < 1e-15);
  CHECK_THROWS_AS(stationary_state(1.0, 0.2), std::invalid_argument);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(0.05, 0.9);
  for (int rep = 0; rep < 10; ++rep) {
    const double l3 = unif(rng);
    const double lstar = (1.0 - l3) * unif(rng);
    const Matrix fixed = stationary_state(l3, lstar);
    CHECK(frob_dist(apply_map({unif(rng), l3, lstar}, fixed), fixed) < 1e-12);
    CHECK(is_psd(fixed, 1e-12));
  }
}

TEST_CASE("static CP conditions at the reference parameters") {
  CHECK(cp_static({1.0, 1.0, 0.0}));
  CHECK_FALSE(cp_static({1.0, 0.5, 0.6}));  // |l3| + |lstar| = 1.1
  // Amplitude damping saturates the cone condition for every t.
  for (double t : {0.2, 1.0, 3.0}) {
    const double l3 = std::exp(-t);
    const PhaseCovParams p{std::exp(-0.5 * t), l3, 1.0 - l3};
    CHECK(cp_static(p));
    CHECK(4.0 * p.l1 * p.l1 + p.lstar * p.lstar ==
          doctest::Approx((1.0 + p.l3) * (1.0 + p.l3)).epsilon(1e-14));
  }
}

TEST_CASE("P-divisibility condition at the reference rate triples") {
  CHECK(p_divisible_pointwise(1.0, 1.0, -1.0));   // -1 + 1 = 0
  CHECK_FALSE(p_divisible_pointwise(1.0, 0.0, -0.1));
  CHECK(p_divisible_pointwise(0.0, 0.0, 0.0));
  CHECK_FALSE(p_divisible_pointwise(-0.2, 1.0, 1.0));
}

TEST_CASE("beta coefficients at the reference triples and round trip") {
  const BetaCoefficients b1 = beta_from_rates(1.0, 1.0, 1.0);
  CHECK(b1.b1 == doctest::Approx(1.0));
  CHECK(b1.b2 == doctest::Approx(3.0));
  CHECK(b1.b3 == doctest::Approx(3.0));

  const BetaCoefficients b2 = beta_from_rates(1.0, 0.0, 0.0);
  CHECK(b2.b1 == doctest::Approx(1.0));
  CHECK(b2.b2 == doctest::Approx(3.0));
  CHECK(b2.b3 == doctest::Approx(-1.0));

  const BetaCoefficients b3 = beta_from_rates(0.0, 0.0, 0.0);
  CHECK(b3.b1 == 0.0);
  CHECK(b3.b2 == 0.0);
  CHECK(b3.b3 == 0.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double gp = unif(rng), gm = unif(rng), gz = unif(rng);
    const auto back = rates_from_beta(beta_from_rates(gp, gm, gz));
    CHECK(std::abs(back[0] - gp) < 1e-14);
    CHECK(std::abs(back[1] - gm) < 1e-14);
    CHECK(std::abs(back[2] - gz) < 1e-14);
  }
}

TEST_CASE("D-sufficient certificate fires through either route") {
  CHECK(d_sufficient_pointwise(1.0, 1.0, 1.0));    // beta = (1, 3, 3)
  CHECK(d_sufficient_pointwise(1.0, 1.0, -0.5));   // beta = (2.5, 1.5, 1.5)
  CHECK(d_sufficient_pointwise(1.0, 0.0, 0.0));    // beta fails, CP holds
  CHECK_FALSE(d_sufficient_pointwise(1.0, 0.0, -0.05));
}

TEST_CASE("beta region equals the explicit inequality region on the grid") {
  for (int i = 0; i < 21; ++i)
    for (int j = 0; j < 21; ++j)
      for (int k = 0; k < 21; ++k) {
        const double gp = -2.0 + 0.2 * i;
        const double gm = -2.0 + 0.2 * j;
        const double gz = -2.0 + 0.2 * k;
        const BetaCoefficients b = beta_from_rates(gp, gm, gz);
        const bool beta_region =
            b.b1 >= -1e-12 && b.b2 >= -1e-12 && b.b3 >= -1e-12;
        const bool explicit_region =
            gp >= -1e-12 && gm >= -1e-12 &&
            std::max(gp - 3.0 * gm, gm - 3.0 * gp) <= gz + 1e-12 &&
            gz <= gp + gm + 1e-12;
        CHECK(beta_region == explicit_region);
      }
}

TEST_CASE("CP-divisible rates are always P- and D-certified") {
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j)
      for (int k = 0; k < 11; ++k) {
        const double gp = 0.2 * i, gm = 0.2 * j, gz = 0.2 * k;
        CHECK(p_divisible_pointwise(gp, gm, gz));
        CHECK(d_sufficient_pointwise(gp, gm, gz));
      }
}

TEST_CASE("classification verdict logic") {
  const auto a = classify_pointwise(1.0, 1.0, -0.5);
  CHECK(a.cp_verdict == Verdict::no);
  CHECK(a.p_verdict == Verdict::yes);
  CHECK(a.d_verdict == Verdict::yes);  // beta route

  const auto b = classify_pointwise(1.0, 0.0, -0.05);
  CHECK(b.p_verdict == Verdict::no);
  CHECK(b.d_verdict == Verdict::no);

  // P holds but neither D route fires: gz < gm - 3 gp with positive rates.
  const auto c = classify_pointwise(0.1, 2.0, -0.4);
  CHECK(c.cp_verdict == Verdict::no);
  CHECK(c.p_verdict == Verdict::yes);
  CHECK(c.d_verdict == Verdict::unknown);
}

TEST_CASE("map is covariant under rotations about sigma_3") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const PhaseCovParams p{unif(rng), unif(rng), unif(rng)};
    const double phi = 3.0 * unif(rng);
    Matrix u = Matrix::Zero(2, 2);  // exp(-i phi sigma_3)
    u(0, 0) = std::polar(1.0, -phi);
    u(1, 1) = std::polar(1.0, phi);
    const Matrix rho = qdiv::testing::random_density(2, rng);
    const Matrix lhs = apply_map(p, u * rho * u.adjoint());
    const Matrix rhs = u * apply_map(p, rho) * u.adjoint();
    CHECK(frob_dist(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("quadrature parameters match the Bloch-z ODE") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.2, 1.2);
  for (int rep = 0; rep < 4; ++rep) {
    const PhaseCovRates r{RateFunction::tanh_profile(unif(rng), unif(rng), 0.1),
                          RateFunction::constant(unif(rng)),
                          RateFunction::tanh_profile(-unif(rng), 1.0, 0.3)};
    const double z0 = 2.0 * unif(rng) - 1.2;
    for (double t : {0.5, 1.5}) {
      const PhaseCovParams p = params_at(r, t, 1e-11);
      const double z_ode = bloch_z_ode(r, z0, t, 4000);
      CHECK(std::abs(p.l3 * z0 + p.lstar - z_ode) < 1e-6);
    }
  }
}

TEST_CASE("generator superoperators drive the expected Bloch derivatives") {
  // L_+ at the maximally mixed state pushes z upward at unit rate.
  const Matrix mixed = 0.5 * Matrix::Identity(2, 2);
  CHECK(frob_dist(dissipator_plus().apply(mixed), 0.5 * sigma(3)) < 1e-15);
  CHECK(frob_dist(dissipator_minus().apply(mixed), -0.5 * sigma(3)) < 1e-15);
  CHECK(dissipator_z().apply(mixed).norm() < 1e-15);
  // All parts annihilate the trace functional.
  for (const SuperOperator& l :
       {dissipator_plus(), dissipator_minus(), dissipator_z()}) {
    const Vector vec_id = vectorize(Matrix::Identity(2, 2));
    CHECK((l.matrix().adjoint() * vec_id).norm() < 1e-14);
  }
}

}  // TEST_SUITE
