#include "qdiv/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace qdiv::engine {
namespace {

void require_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw std::invalid_argument("time grid needs >= 2 points");
  if (grid.front() != 0.0) throw std::invalid_argument("time grid must start at 0");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw std::invalid_argument("time grid must be sorted");
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Pauli transfer matrix T(i,j) = Re tr(sigma_i V(sigma_j)) / 2 of a qubit map.
RealMatrix pauli_transfer(const SuperOperator& v) {
  RealMatrix t(4, 4);
  for (int j = 0; j < 4; ++j) {
    const Matrix image = v.apply(sigma(j));
    for (int i = 0; i < 4; ++i)
      t(i, j) = 0.5 * (sigma(i) * image).trace().real();
  }
  return t;
}

struct RateMargins {
  double cp;  // min over the infinitesimal CP certificate slack
  double p;   // min over the positivity certificate slack
};

RateMargins margins_for(Family family, const std::vector<double>& g) {
  RateMargins m{};
  m.cp = *std::min_element(g.begin(), g.end());
  switch (family) {
    case Family::pauli:
      m.p = std::min({g[0] + g[1], g[0] + g[2], g[1] + g[2]});
      break;
    case Family::phasecov:
      m.p = std::min({g[0], g[1], g[2] + std::sqrt(std::max(g[0] * g[1], 0.0))});
      break;
    case Family::gpc:
      m.p = m.cp;
      break;
  }
  return m;
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::pauli: return "pauli";
    case Family::gpc: return "gpc";
    case Family::phasecov: return "phasecov";
  }
  return "unknown";
}

const char* to_string(OracleAgreement a) {
  switch (a) {
    case OracleAgreement::agree: return "agree";
    case OracleAgreement::disagree: return "disagree";
    case OracleAgreement::boundary: return "boundary";
    case OracleAgreement::skipped: return "skipped";
  }
  return "skipped";
}

GeneratorSpec GeneratorSpec::make_pauli(pauli::PauliRates r) {
  std::vector<RateFunction> rates{std::move(r.g1), std::move(r.g2), std::move(r.g3)};
  return GeneratorSpec(Family::pauli, 2, std::move(rates), nullptr);
}

GeneratorSpec GeneratorSpec::make_gpc(int d, std::vector<RateFunction> rates) {
  if (static_cast<int>(rates.size()) != d + 1)
    throw ConfigError("generalized Pauli channel needs d+1 rate functions");
  auto mubs = std::make_shared<const MubFamily>(MubFamily::build(d));
  return GeneratorSpec(Family::gpc, d, std::move(rates), std::move(mubs));
}

GeneratorSpec GeneratorSpec::make_phasecov(phasecov::PhaseCovRates r) {
  std::vector<RateFunction> rates{std::move(r.g_plus), std::move(r.g_minus),
                                  std::move(r.g_z)};
  return GeneratorSpec(Family::phasecov, 2, std::move(rates), nullptr);
}

const MubFamily& GeneratorSpec::mubs() const {
  if (!mubs_) throw std::logic_error("MUB family only exists for gpc specs");
  return *mubs_;
}

std::vector<double> GeneratorSpec::rates_at(double t) const {
  std::vector<double> out(rates_.size());
  for (std::size_t i = 0; i < rates_.size(); ++i) out[i] = rates_[i](t);
  return out;
}

SuperOperator GeneratorSpec::generator_from_rates(const std::vector<double>& g) const {
  switch (family_) {
    case Family::pauli:
      return pauli::generator_from_rates({g[0], g[1], g[2]});
    case Family::phasecov:
      return phasecov::generator_from_rates(g[0], g[1], g[2]);
    case Family::gpc: {
      SuperOperator l = SuperOperator::zero(d_);
      const SuperOperator id = SuperOperator::identity(d_);
      for (int alpha = 1; alpha <= d_ + 1; ++alpha)
        l = l + g[static_cast<std::size_t>(alpha - 1)] *
                    (gpc::dephasing_channel(mubs(), alpha) - id);
      return l;
    }
  }
  throw std::logic_error("unreachable");
}

SuperOperator GeneratorSpec::generator_at(double t) const {
  return generator_from_rates(rates_at(t));
}

FamilyDynamics::FamilyDynamics(GeneratorSpec spec, double horizon, double quad_tol)
    : spec_(std::move(spec)), horizon_(horizon), quad_tol_(quad_tol) {
  if (horizon_ <= 0.0) horizon_ = 1.0;
  acc_.reserve(spec_.rates().size());
  for (const RateFunction& r : spec_.rates())
    acc_.emplace_back(r, horizon_, 256, quad_tol_);
}

std::vector<double> FamilyDynamics::accumulated_at(double t) const {
  std::vector<double> out(acc_.size());
  for (std::size_t i = 0; i < acc_.size(); ++i) out[i] = acc_[i](t);
  return out;
}

std::vector<double> FamilyDynamics::eigenvalues_at(double t) const {
  const std::vector<double> gammas = accumulated_at(t);
  switch (spec_.family()) {
    case Family::pauli: {
      const auto l = pauli::eigenvalues_from_accumulated({gammas[0], gammas[1], gammas[2]});
      return {l.l1, l.l2, l.l3};
    }
    case Family::gpc:
      return gpc::eigenvalues_from_accumulated(gammas);
    case Family::phasecov: {
      const double l1 = std::exp(-0.5 * (gammas[0] + gammas[1] + gammas[2]));
      const double l3 = std::exp(-(gammas[0] + gammas[1]));
      return {l1, l1, l3};
    }
  }
  throw std::logic_error("unreachable");
}

double FamilyDynamics::min_eigenvalue_at(double t) const {
  const std::vector<double> l = eigenvalues_at(t);
  return *std::min_element(l.begin(), l.end());
}

phasecov::PhaseCovParams FamilyDynamics::phasecov_params_at(double t) const {
  if (spec_.family() != Family::phasecov)
    throw std::logic_error("phase-covariant parameters need a phasecov spec");
  return phasecov::params_from_accumulated(acc_[0], acc_[1], acc_[2], t, quad_tol_);
}

SuperOperator FamilyDynamics::map_at(double t) const {
  switch (spec_.family()) {
    case Family::pauli: {
      const std::vector<double> gammas = accumulated_at(t);
      const auto l = pauli::eigenvalues_from_accumulated({gammas[0], gammas[1], gammas[2]});
      return pauli::channel_superoperator(pauli::probabilities_from_eigenvalues(l));
    }
    case Family::gpc: {
      const auto lambda = gpc::eigenvalues_from_accumulated(accumulated_at(t));
      return gpc::gpc_map(spec_.mubs(),
                          gpc::probabilities_from_eigenvalues(lambda, spec_.dim()));
    }
    case Family::phasecov:
      return phasecov::map_superoperator(phasecov_params_at(t));
  }
  throw std::logic_error("unreachable");
}

Propagator FamilyDynamics::propagator(double s, double t) const {
  if (s < 0.0 || t < s)
    throw std::invalid_argument("propagator needs 0 <= s <= t");
  if (min_eigenvalue_at(s) < defaults::invertibility_floor)
    throw NumericalError("Lambda_s is not invertible; propagator undefined");
  const std::vector<double> gs = accumulated_at(s);
  const std::vector<double> gt = accumulated_at(t);
  std::vector<double> delta(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) delta[i] = gt[i] - gs[i];

  switch (spec_.family()) {
    case Family::pauli: {
      const auto mu = pauli::eigenvalues_from_accumulated({delta[0], delta[1], delta[2]});
      return {s, t,
              pauli::channel_superoperator(pauli::probabilities_from_eigenvalues(mu))};
    }
    case Family::gpc: {
      const auto mu = gpc::eigenvalues_from_accumulated(delta);
      return {s, t,
              gpc::gpc_map(spec_.mubs(),
                           gpc::probabilities_from_eigenvalues(mu, spec_.dim()))};
    }
    case Family::phasecov: {
      const auto ps = phasecov_params_at(s);
      const auto pt = phasecov_params_at(t);
      phasecov::PhaseCovParams v;
      v.l1 = pt.l1 / ps.l1;
      v.l3 = pt.l3 / ps.l3;
      v.lstar = pt.lstar - ps.lstar * v.l3;
      return {s, t, phasecov::map_superoperator(v)};
    }
  }
  throw std::logic_error("unreachable");
}

SuperOperator analytic_map_at(const GeneratorSpec& g, double t, double quad_tol) {
  return FamilyDynamics(g, std::max(t, 1.0), quad_tol).map_at(t);
}

std::vector<SuperOperator> integrate_master_equation_fixed(
    const GeneratorSpec& g, const std::vector<double>& grid, int substeps) {
  require_grid(grid);
  if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
  const Index d = g.dim();
  Matrix state = Matrix::Identity(d * d, d * d);
  std::vector<SuperOperator> out;
  out.reserve(grid.size());
  out.emplace_back(d, state);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double h = (grid[i] - grid[i - 1]) / substeps;
    double t = grid[i - 1];
    for (int n = 0; n < substeps; ++n) {
      const Matrix l0 = g.generator_at(t).matrix();
      const Matrix lm = g.generator_at(t + 0.5 * h).matrix();
      const Matrix l1 = g.generator_at(t + h).matrix();
      const Matrix k1 = l0 * state;
      const Matrix k2 = lm * (state + 0.5 * h * k1);
      const Matrix k3 = lm * (state + 0.5 * h * k2);
      const Matrix k4 = l1 * (state + h * k3);
      state += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
    }
    out.emplace_back(d, state);
  }
  return out;
}

std::vector<SuperOperator> integrate_master_equation(const GeneratorSpec& g,
                                                     const std::vector<double>& grid,
                                                     double tol,
                                                     int max_refinements) {
  require_grid(grid);
  std::vector<SuperOperator> prev = integrate_master_equation_fixed(g, grid, 1);
  int substeps = 1;
  for (int r = 0; r < max_refinements; ++r) {
    substeps *= 2;
    std::vector<SuperOperator> next = integrate_master_equation_fixed(g, grid, substeps);
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      diff = std::max(diff, max_abs_diff(next[i].matrix(), prev[i].matrix()));
    prev = std::move(next);
    if (diff <= tol) return prev;
  }
  throw NumericalError("master-equation integration did not converge within the refinement limit");
}

bool check_cp(const Propagator& v, double tol) {
  return is_psd(choi_of(v.v), tol);
}

bool check_cocp(const Propagator& v, double tol) {
  return is_psd(partial_transpose(choi_of(v.v)), tol);
}

bool check_positive_qubit(const Propagator& v, int samples, std::uint64_t seed) {
  if (v.v.dim() != 2)
    throw std::invalid_argument("positivity test implemented for qubit maps only");
  const RealMatrix t = pauli_transfer(v.v);
  const RealMatrix block = t.block(1, 1, 3, 3);
  const RealVector shift = t.block(1, 0, 3, 1);
  const bool diagonal = (block - block.diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-12;
  if (diagonal && shift.norm() < 1e-12) {
    // Unital Pauli-diagonal map: positivity == Bloch-ball contraction.
    return std::abs(block(0, 0)) <= 1.0 + 1e-12 &&
           std::abs(block(1, 1)) <= 1.0 + 1e-12 &&
           std::abs(block(2, 2)) <= 1.0 + 1e-12;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int n = 0; n < samples; ++n) {
    const double z = 1.0 - 2.0 * unit(rng);
    const double phi = 2.0 * std::numbers::pi * unit(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    Eigen::Vector3d bloch(r * std::cos(phi), r * std::sin(phi), z);
    const Eigen::Vector3d image = block * bloch + shift;
    if (image.norm() > 1.0 + 1e-9) return false;
  }
  return true;
}

TimePointRecord classify_rates(const GeneratorSpec& g,
                               const std::vector<double>& rates, double tol) {
  TimePointRecord rec;
  rec.rates = rates;
  switch (g.family()) {
    case Family::pauli: {
      const auto c = pauli::classify_pointwise({rates[0], rates[1], rates[2]}, tol);
      rec.cp = c.cp ? Verdict::yes : Verdict::no;
      rec.p = c.p ? Verdict::yes : Verdict::no;
      rec.d = c.d ? Verdict::yes : Verdict::no;
      auto mark = [&rec](const char* name, bool held) {
        rec.fired.emplace_back(std::string(name) + (held ? ":held" : ":failed"));
      };
      mark("cp.rates_nonneg", c.cp);
      mark("p.pairwise_sums", c.p);
      mark("d.j_nonneg", c.d);
      break;
    }
    case Family::gpc: {
      const auto c = gpc::classify_pointwise(rates, g.dim(), tol);
      rec.cp = c.cp_verdict;
      rec.p = c.p_verdict;
      rec.d = c.d_verdict;
      rec.fired = c.fired;
      break;
    }
    case Family::phasecov: {
      const auto c = phasecov::classify_pointwise(rates[0], rates[1], rates[2], tol);
      rec.cp = c.cp_verdict;
      rec.p = c.p_verdict;
      rec.d = c.d_verdict;
      rec.fired = c.fired;
      break;
    }
  }
  return rec;
}

int DivisibilityReport::oracle_count(OracleAgreement a) const {
  int n = 0;
  for (const OracleRecord& rec : oracles) {
    if (rec.cp_agreement == a) ++n;
    if (rec.has_positivity && rec.p_agreement == a) ++n;
  }
  return n;
}

DivisibilityReport classify_timeline(const GeneratorSpec& g,
                                     const std::vector<double>& grid,
                                     const TimelineOptions& options) {
  require_grid(grid);
  DivisibilityReport report;
  report.family = to_string(g.family());
  report.dim = g.dim();
  report.grid = grid;
  report.seed = options.seed;
  report.oracles_enabled = options.oracles;

  const FamilyDynamics dynamics(g, grid.back(), options.quad_tol);

  // Pointwise certificates with the invertibility guard: once an eigenvalue
  // drops below the floor, that point and everything later is indeterminate.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    const bool invertible = dynamics.min_eigenvalue_at(t) >= defaults::invertibility_floor;
    if (report.first_indeterminate < 0 && !invertible)
      report.first_indeterminate = static_cast<int>(i);
    if (report.first_indeterminate >= 0) {
      TimePointRecord rec;
      rec.t = t;
      rec.rates = g.rates_at(t);
      rec.cp = rec.p = rec.d = Verdict::indeterminate;
      rec.invertible = false;
      rec.fired = {"invertibility:lost"};
      report.points.push_back(std::move(rec));
      continue;
    }
    TimePointRecord rec = classify_rates(g, g.rates_at(t), options.cert_tol);
    rec.t = t;
    rec.invertible = true;
    report.points.push_back(std::move(rec));
  }

  for (const TimePointRecord& rec : report.points) {
    if (rec.cp == Verdict::yes && rec.d != Verdict::yes) report.hierarchy_ok = false;
    if (rec.d == Verdict::yes && rec.p == Verdict::no) report.hierarchy_ok = false;
  }
  if (!report.hierarchy_ok)
    throw NumericalError("certificate hierarchy violated: CP => D => not(P = NO)");

  Verdict scp = Verdict::yes, sp = Verdict::yes, sd = Verdict::yes;
  for (const TimePointRecord& rec : report.points) {
    scp = meet(scp, rec.cp);
    sp = meet(sp, rec.p);
    sd = meet(sd, rec.d);
  }
  report.summary_cp = scp;
  report.summary_p = sp;
  report.summary_d = sd;

  if (!options.oracles) return report;

  const std::size_t usable =
      report.first_indeterminate < 0 ? grid.size()
                                     : static_cast<std::size_t>(report.first_indeterminate);
  if (usable < 2) return report;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < usable; ++i) pairs.emplace_back(i, i + 1);
  const std::size_t adjacent_count = pairs.size();
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, usable - 1);
  for (int n = 0; n < options.random_pairs; ++n) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    pairs.emplace_back(a, b);
  }

  const bool qubit_positivity = g.dim() == 2;
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const auto [i, j] = pairs[n];
    const double s = grid[i], t = grid[j];
    OracleRecord rec;
    rec.s = s;
    rec.t = t;
    rec.adjacent = n < adjacent_count;
    const Propagator v = dynamics.propagator(s, t);
    rec.cp_oracle = check_cp(v, options.psd_tol);
    if (qubit_positivity) {
      rec.has_positivity = true;
      rec.positivity_oracle =
          check_positive_qubit(v, options.positivity_samples, rng());
    }

    if (rec.adjacent) {
      // Two-sided comparison against the midpoint certificates. Skip as a
      // boundary interval when the grid cannot resolve the sign: midpoint
      // and interval-averaged rates disagree, or the averaged margin sits
      // inside the O(h) resolution band.
      const double h = t - s;
      const std::vector<double> gs = dynamics.accumulated_at(s);
      const std::vector<double> gt = dynamics.accumulated_at(t);
      std::vector<double> avg(gs.size());
      for (std::size_t q = 0; q < gs.size(); ++q) avg[q] = (gt[q] - gs[q]) / h;
      const std::vector<double> mid = g.rates_at(0.5 * (s + t));
      const TimePointRecord class_mid = classify_rates(g, mid, options.cert_tol);
      const TimePointRecord class_avg = classify_rates(g, avg, options.cert_tol);
      const RateMargins margins = margins_for(g.family(), avg);
      double scale = 1.0;
      for (double x : avg) scale = std::max(scale, std::abs(x));
      const double band = 4.0 * h * scale * scale + 1e-9;

      rec.cp_rate = class_mid.cp;
      if (class_mid.cp != class_avg.cp || std::abs(margins.cp) < band)
        rec.cp_agreement = OracleAgreement::boundary;
      else
        rec.cp_agreement = rec.cp_oracle == (class_mid.cp == Verdict::yes)
                               ? OracleAgreement::agree
                               : OracleAgreement::disagree;

      if (rec.has_positivity) {
        rec.p_rate = class_mid.p;
        if (class_mid.p != class_avg.p || std::abs(margins.p) < band)
          rec.p_agreement = OracleAgreement::boundary;
        else
          rec.p_agreement = rec.positivity_oracle == (class_mid.p == Verdict::yes)
                                ? OracleAgreement::agree
                                : OracleAgreement::disagree;
      }
    } else {
      // Long interval: divisibility certificates compose, so only the
      // YES-conjunction direction is checkable.
      Verdict cp_conj = Verdict::yes, p_conj = Verdict::yes;
      for (std::size_t q = i; q <= j; ++q) {
        cp_conj = meet(cp_conj, report.points[q].cp);
        p_conj = meet(p_conj, report.points[q].p);
      }
      rec.cp_rate = cp_conj;
      if (cp_conj == Verdict::yes)
        rec.cp_agreement =
            rec.cp_oracle ? OracleAgreement::agree : OracleAgreement::disagree;
      if (rec.has_positivity) {
        rec.p_rate = p_conj;
        if (p_conj == Verdict::yes)
          rec.p_agreement = rec.positivity_oracle ? OracleAgreement::agree
                                                  : OracleAgreement::disagree;
      }
    }
    report.oracles.push_back(std::move(rec));
  }
  return report;
}

}  // namespace qdiv::engine
