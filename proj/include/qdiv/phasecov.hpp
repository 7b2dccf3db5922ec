#ifndef QDIV_PHASECOV_HPP
#define QDIV_PHASECOV_HPP

#include <array>
#include <string>
#include <vector>

#include "qdiv/linalg.hpp"
#include "qdiv/rates.hpp"
#include "qdiv/types.hpp"

namespace qdiv::phasecov {

/// Rates of the phase-covariant qubit generator
/// L_t = g_plus L_+ + g_minus L_- + g_z L_3 with
/// L_pm(rho) = sigma_pm rho sigma_mp - {sigma_mp sigma_pm, rho}/2 and
/// L_3(rho) = (sigma_3 rho sigma_3 - rho)/4.
struct PhaseCovRates {
  RateFunction g_plus, g_minus, g_z;
};

/// Map parameters: Bloch action (x, y, z) -> (l1 x, l1 y, l3 z + lstar).
struct PhaseCovParams {
  double l1, l3, lstar;
};

/// l1 = exp(-(G+ + G- + G3)/2), l3 = exp(-(G+ + G-)),
/// lstar = exp(-(G+ + G-)) int_0^t (g+ - g-) exp(G+ + G-).
PhaseCovParams params_at(const PhaseCovRates& r, double t,
                         double tol = defaults::quad_tol);

/// Same from shared accumulated integrals (engine fast path).
PhaseCovParams params_from_accumulated(const AccumulatedRate& g_plus,
                                       const AccumulatedRate& g_minus,
                                       const AccumulatedRate& g_z, double t,
                                       double tol = defaults::quad_tol);

/// Lambda[rho] = [(I + lstar sigma_3) tr(rho) + l1 sigma_1 tr(rho sigma_1)
///              + l1 sigma_2 tr(rho sigma_2) + l3 sigma_3 tr(rho sigma_3)]/2.
Matrix apply_map(const PhaseCovParams& p, const Matrix& rho);

SuperOperator map_superoperator(const PhaseCovParams& p);

/// rho* = [I + lstar/(1 - l3) sigma_3]/2; throws for l3 == 1 (no unique
/// stationary state).
Matrix stationary_state(double l3, double lstar);

/// CP iff |l3| + |lstar| <= 1 and 4 l1^2 + lstar^2 <= (1 + l3)^2.
bool cp_static(const PhaseCovParams& p, double tol = defaults::cert_tol);

/// P-divisible iff g_pm >= 0 and g_z + sqrt(g_plus g_minus) >= 0.
bool p_divisible_pointwise(double g_plus, double g_minus, double g_z,
                           double tol = defaults::cert_tol);

/// Generator coefficients over the decomposable building blocks; all
/// nonnegative is a sufficient D-divisibility certificate.
struct BetaCoefficients {
  double b1, b2, b3;
};

BetaCoefficients beta_from_rates(double g_plus, double g_minus, double g_z);
std::array<double, 3> rates_from_beta(const BetaCoefficients& b);

/// True when all beta >= 0 or the CP route (g_pm >= 0, g_z >= 0) holds.
bool d_sufficient_pointwise(double g_plus, double g_minus, double g_z,
                            double tol = defaults::cert_tol);

struct PhaseCovCertificate {
  bool cp = false;
  bool p = false;
  bool beta_nonneg = false;
  Verdict cp_verdict = Verdict::unknown;
  Verdict p_verdict = Verdict::unknown;
  Verdict d_verdict = Verdict::unknown;
  std::vector<std::string> fired;
};

PhaseCovCertificate classify_pointwise(double g_plus, double g_minus, double g_z,
                                       double tol = defaults::cert_tol);

SuperOperator dissipator_plus();
SuperOperator dissipator_minus();
SuperOperator dissipator_z();

SuperOperator generator_from_rates(double g_plus, double g_minus, double g_z);

}  // namespace qdiv::phasecov

#endif  // QDIV_PHASECOV_HPP
