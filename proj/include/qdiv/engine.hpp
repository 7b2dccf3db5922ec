#ifndef QDIV_ENGINE_HPP
#define QDIV_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdiv/gpc.hpp"
#include "qdiv/linalg.hpp"
#include "qdiv/mub.hpp"
#include "qdiv/pauli.hpp"
#include "qdiv/phasecov.hpp"
#include "qdiv/rates.hpp"
#include "qdiv/types.hpp"

namespace qdiv::engine {

enum class Family { pauli, gpc, phasecov };

const char* to_string(Family f);

/// One of the three rate-driven channel families together with everything
/// needed to materialize its time-local generator L_t.
class GeneratorSpec {
 public:
  static GeneratorSpec make_pauli(pauli::PauliRates r);
  static GeneratorSpec make_gpc(int d, std::vector<RateFunction> rates);
  static GeneratorSpec make_phasecov(phasecov::PhaseCovRates r);

  Family family() const { return family_; }
  int dim() const { return d_; }
  int rate_count() const { return static_cast<int>(rates_.size()); }
  const std::vector<RateFunction>& rates() const { return rates_; }
  const MubFamily& mubs() const;

  std::vector<double> rates_at(double t) const;
  SuperOperator generator_at(double t) const;
  SuperOperator generator_from_rates(const std::vector<double>& g) const;

 private:
  GeneratorSpec(Family f, int d, std::vector<RateFunction> rates,
                std::shared_ptr<const MubFamily> mubs)
      : family_(f), d_(d), rates_(std::move(rates)), mubs_(std::move(mubs)) {}

  Family family_;
  int d_;
  std::vector<RateFunction> rates_;
  std::shared_ptr<const MubFamily> mubs_;
};

/// Map carrying the state from time s to time t.
struct Propagator {
  double s = 0.0;
  double t = 0.0;
  SuperOperator v;
};

/// Analytic solution machinery for one family over [0, horizon]: cached
/// rate integrals, map eigenvalues, Lambda_t, and propagators built from
/// eigenvalue ratios (never from numeric inversion).
class FamilyDynamics {
 public:
  FamilyDynamics(GeneratorSpec spec, double horizon,
                 double quad_tol = defaults::quad_tol);

  const GeneratorSpec& spec() const { return spec_; }
  double horizon() const { return horizon_; }

  /// Gamma_a(t) for every rate.
  std::vector<double> accumulated_at(double t) const;

  /// Contraction eigenvalues of Lambda_t (pauli: 3, gpc: d+1,
  /// phasecov: {l1, l1, l3}).
  std::vector<double> eigenvalues_at(double t) const;
  double min_eigenvalue_at(double t) const;

  phasecov::PhaseCovParams phasecov_params_at(double t) const;

  SuperOperator map_at(double t) const;

  /// V_{t,s}; throws NumericalError when Lambda_s is not invertible
  /// (some eigenvalue below the invertibility floor).
  Propagator propagator(double s, double t) const;

 private:
  GeneratorSpec spec_;
  double horizon_;
  double quad_tol_;
  std::vector<AccumulatedRate> acc_;
};

/// Convenience wrapper building the dynamics for a single evaluation.
SuperOperator analytic_map_at(const GeneratorSpec& g, double t,
                              double quad_tol = defaults::quad_tol);

/// Classic fixed-step RK4 for dLambda/dt = L_t Lambda_t, Lambda_0 = id,
/// evaluated at every grid point with `substeps` uniform steps per grid
/// interval.
std::vector<SuperOperator> integrate_master_equation_fixed(
    const GeneratorSpec& g, const std::vector<double>& grid, int substeps);

/// Step-halving refinement of the above until successive refinements agree
/// within tol in max norm. Throws NumericalError when the refinement depth
/// is exhausted.
std::vector<SuperOperator> integrate_master_equation(
    const GeneratorSpec& g, const std::vector<double>& grid, double tol = 1e-8,
    int max_refinements = 12);

/// Choi positivity of the propagator.
bool check_cp(const Propagator& v, double tol = 1e-8);

/// Choi positivity after partial transposition (complete copositivity).
bool check_cocp(const Propagator& v, double tol = 1e-8);

/// Positivity of a qubit propagator: Bloch-multiplier test for unital
/// Pauli-diagonal maps, image sampling of `samples` pure states otherwise.
bool check_positive_qubit(const Propagator& v, int samples = 10000,
                          std::uint64_t seed = 0x9e3779b97f4a7c15ull);

enum class OracleAgreement { agree, disagree, boundary, skipped };
const char* to_string(OracleAgreement a);

struct TimePointRecord {
  double t = 0.0;
  std::vector<double> rates;
  Verdict cp = Verdict::unknown;
  Verdict p = Verdict::unknown;
  Verdict d = Verdict::unknown;
  std::vector<std::string> fired;
  bool invertible = true;
};

struct OracleRecord {
  double s = 0.0;
  double t = 0.0;
  bool adjacent = false;
  bool cp_oracle = false;
  Verdict cp_rate = Verdict::unknown;
  OracleAgreement cp_agreement = OracleAgreement::skipped;
  bool has_positivity = false;
  bool positivity_oracle = false;
  Verdict p_rate = Verdict::unknown;
  OracleAgreement p_agreement = OracleAgreement::skipped;
};

struct DivisibilityReport {
  std::string family;
  int dim = 0;
  std::vector<double> grid;
  std::vector<TimePointRecord> points;
  std::vector<OracleRecord> oracles;
  Verdict summary_cp = Verdict::unknown;
  Verdict summary_p = Verdict::unknown;
  Verdict summary_d = Verdict::unknown;
  std::uint64_t seed = 0;
  bool oracles_enabled = false;
  int first_indeterminate = -1;  // grid index, -1 when always invertible
  bool hierarchy_ok = true;

  int oracle_count(OracleAgreement a) const;
};

struct TimelineOptions {
  double cert_tol = defaults::cert_tol;
  double psd_tol = 1e-8;
  double quad_tol = defaults::quad_tol;
  bool oracles = true;
  int random_pairs = 10;
  int positivity_samples = 10000;
  std::uint64_t seed = 1;
};

/// Pointwise certificates of one family at fixed rate values.
TimePointRecord classify_rates(const GeneratorSpec& g,
                               const std::vector<double>& rates,
                               double tol = defaults::cert_tol);

/// Full timeline classification: per-grid-point certificates, numeric
/// oracle cross-checks on grid-adjacent plus random (s, t) propagator
/// pairs, hierarchy enforcement (CP => D => not(P = NO)).
DivisibilityReport classify_timeline(const GeneratorSpec& g,
                                     const std::vector<double>& grid,
                                     const TimelineOptions& options = {});

}  // namespace qdiv::engine

#endif  // QDIV_ENGINE_HPP
