#ifndef QDIV_GPC_HPP
#define QDIV_GPC_HPP

#include <string>
#include <vector>

#include "qdiv/linalg.hpp"
#include "qdiv/mub.hpp"
#include "qdiv/rates.hpp"
#include "qdiv/types.hpp"

namespace qdiv::gpc {

/// d+1 decoherence rates of the qudit generator
/// L_t = sum_a gamma_a(t) (Phi_a - id) over the d+1 MUB dephasings.
struct GpcRates {
  int d;
  std::vector<RateFunction> gamma;  // size d+1, 1-based semantics
};

/// Phi_alpha(X) = sum_k P_k^(alpha) X P_k^(alpha); idempotent, unital, TP.
SuperOperator dephasing_channel(const MubFamily& m, int alpha);

/// Lambda = (d p0 - 1)/(d-1) id + d/(d-1) sum_a p_a Phi_a; p has d+2 entries
/// (p0, p1..p_{d+1}).
SuperOperator gpc_map(const MubFamily& m, const std::vector<double>& p);

/// lambda_a(t) = exp(-int_0^t (gamma_0 - gamma_a)), gamma_0 = sum of rates.
std::vector<double> eigenvalues_at(const GpcRates& r, double t,
                                   double tol = defaults::quad_tol);

/// Same from precomputed Gamma_a(t) = int_0^t gamma_a (size d+1).
std::vector<double> eigenvalues_from_accumulated(const std::vector<double>& gammas);

/// p0 = [1 + (d-1) sum l]/d^2, p_a = (d-1)/d^2 [1 + d l_a - sum l].
std::vector<double> probabilities_from_eigenvalues(const std::vector<double>& lambda,
                                                   int d);

/// lambda_a = [d (p0 + p_a) - 1]/(d - 1); inverse of the above.
std::vector<double> eigenvalues_from_probabilities(const std::vector<double>& p,
                                                   int d);

/// Sufficient decomposable-divisibility certificate:
/// sum_b gamma_b >= (d-1) max_a gamma_a.
bool d_sufficient(const std::vector<double>& g, int d,
                  double tol = defaults::cert_tol);

/// j_a = [sum_b gamma_b/(d-1) - gamma_a]/2; all nonnegative iff d_sufficient.
std::vector<double> j_alpha(const std::vector<double>& g, int d);

/// Necessary positivity certificate: sum_b gamma_b - gamma_a >= 0 for all a.
bool p_necessary(const std::vector<double>& g, int d,
                 double tol = defaults::cert_tol);

/// Sufficient positivity certificate: gamma_a + (d-1) gamma_b >= 0, b != a.
bool p_sufficient_pair(const std::vector<double>& g, int d,
                       double tol = defaults::cert_tol);

/// Number of strictly negative rates (values within tol of 0 count as
/// nonnegative).
int negative_rate_count(const std::vector<double>& g,
                        double tol = defaults::cert_tol);

/// The k-negative-rates certificate applies only while k <= (d+1)/2 and
/// d - 2(k-1) > 0.
bool p_sufficient_k_applicable(const std::vector<double>& g, int d,
                               double tol = defaults::cert_tol);

/// Sufficient positivity certificate with k negative rates: some
/// nonnegative rate reaches (d+k-1)/(d-k+1) times the deepest negative one.
/// Returns false when inapplicable (see p_sufficient_k_applicable).
bool p_sufficient_k(const std::vector<double>& g, int d,
                    double tol = defaults::cert_tol);

/// Pointwise certificate bundle with derived tri-state verdicts. `fired`
/// lists every evaluated certificate as "<name>:<held|failed|inapplicable>".
struct GpcCertificate {
  bool cp = false;
  bool p_necessary = false;
  bool p_sufficient_pair = false;
  bool p_sufficient_k = false;
  bool p_sufficient_k_applicable = false;
  bool d_sufficient = false;
  Verdict cp_verdict = Verdict::unknown;
  Verdict p_verdict = Verdict::unknown;
  Verdict d_verdict = Verdict::unknown;
  std::vector<std::string> fired;
};

GpcCertificate classify_pointwise(const std::vector<double>& g, int d,
                                  double tol = defaults::cert_tol);

}  // namespace qdiv::gpc

#endif  // QDIV_GPC_HPP
