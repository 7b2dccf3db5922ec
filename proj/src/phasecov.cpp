#include "qdiv/phasecov.hpp"

#include <cmath>

namespace qdiv::phasecov {
namespace {

Matrix sigma_plus() {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}

Matrix sigma_minus() {
  Matrix m(2, 2);
  m << 0, 0, 1, 0;
  return m;
}

SuperOperator lindblad_term(const Matrix& x) {
  const Matrix xx = x.adjoint() * x;
  return SuperOperator::conjugation(x) -
         0.5 * (SuperOperator::sandwich(xx, Matrix::Identity(2, 2)) +
                SuperOperator::sandwich(Matrix::Identity(2, 2), xx));
}

}  // namespace

PhaseCovParams params_at(const PhaseCovRates& r, double t, double tol) {
  const AccumulatedRate gp(r.g_plus, t > 0.0 ? t : 1.0, 64, tol);
  const AccumulatedRate gm(r.g_minus, t > 0.0 ? t : 1.0, 64, tol);
  const AccumulatedRate gz(r.g_z, t > 0.0 ? t : 1.0, 64, tol);
  return params_from_accumulated(gp, gm, gz, t, tol);
}

PhaseCovParams params_from_accumulated(const AccumulatedRate& g_plus,
                                       const AccumulatedRate& g_minus,
                                       const AccumulatedRate& g_z, double t,
                                       double tol) {
  const double gp = g_plus(t), gm = g_minus(t);
  PhaseCovParams out;
  out.l1 = std::exp(-0.5 * (gp + gm + g_z(t)));
  out.l3 = std::exp(-(gp + gm));
  // lstar = int_0^t (g+ - g-) exp(G(tau) - G(t)); shifting the exponent by
  // G(t) folds the exp(-G(t)) prefactor into the quadrature.
  const RateFunction diff = RateFunction::linear_combination(
      {{1.0, g_plus.rate()}, {-1.0, g_minus.rate()}});
  out.lstar = weighted_exp_integral(diff, g_plus, g_minus, t, tol, gp + gm);
  return out;
}

Matrix apply_map(const PhaseCovParams& p, const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2)
    throw std::invalid_argument("phase-covariant map acts on 2x2 matrices");
  Matrix out = Matrix::Zero(2, 2);
  const Complex tr = rho.trace();
  out += 0.5 * tr * (Matrix::Identity(2, 2) + p.lstar * sigma(3));
  out += 0.5 * p.l1 * (rho * sigma(1)).trace() * sigma(1);
  out += 0.5 * p.l1 * (rho * sigma(2)).trace() * sigma(2);
  out += 0.5 * p.l3 * (rho * sigma(3)).trace() * sigma(3);
  return out;
}

SuperOperator map_superoperator(const PhaseCovParams& p) {
  Matrix rep(4, 4);
  for (Index j = 0; j < 4; ++j) {
    const Matrix e = unvectorize(Vector::Unit(4, j), 2, 2);
    rep.col(j) = vectorize(apply_map(p, e));
  }
  return {2, std::move(rep)};
}

Matrix stationary_state(double l3, double lstar) {
  if (l3 == 1.0)
    throw std::invalid_argument(
        "l3 = 1 admits no unique stationary state (unital direction)");
  return 0.5 * (Matrix::Identity(2, 2) + (lstar / (1.0 - l3)) * sigma(3));
}

bool cp_static(const PhaseCovParams& p, double tol) {
  const bool trace_cond = std::abs(p.l3) + std::abs(p.lstar) <= 1.0 + tol;
  const bool cone_cond =
      4.0 * p.l1 * p.l1 + p.lstar * p.lstar <= (1.0 + p.l3) * (1.0 + p.l3) + tol;
  return trace_cond && cone_cond;
}

bool p_divisible_pointwise(double g_plus, double g_minus, double g_z, double tol) {
  if (g_plus < -tol || g_minus < -tol) return false;
  double product = g_plus * g_minus;
  if (product < 0.0 && product > -1e-14) product = 0.0;  // rounding guard
  if (product < 0.0) return false;
  return g_z + std::sqrt(product) >= -tol;
}

BetaCoefficients beta_from_rates(double g_plus, double g_minus, double g_z) {
  return {g_plus + g_minus - g_z, 3.0 * g_plus - g_minus + g_z,
          -g_plus + 3.0 * g_minus + g_z};
}

std::array<double, 3> rates_from_beta(const BetaCoefficients& b) {
  return {0.25 * (b.b1 + b.b2), 0.25 * (b.b1 + b.b3),
          0.25 * (b.b2 + b.b3 - 2.0 * b.b1)};
}

bool d_sufficient_pointwise(double g_plus, double g_minus, double g_z, double tol) {
  const BetaCoefficients b = beta_from_rates(g_plus, g_minus, g_z);
  const bool beta_route = b.b1 >= -tol && b.b2 >= -tol && b.b3 >= -tol;
  const bool cp_route = g_plus >= -tol && g_minus >= -tol && g_z >= -tol;
  return beta_route || cp_route;
}

PhaseCovCertificate classify_pointwise(double g_plus, double g_minus, double g_z,
                                       double tol) {
  PhaseCovCertificate cert;
  cert.cp = g_plus >= -tol && g_minus >= -tol && g_z >= -tol;
  cert.p = p_divisible_pointwise(g_plus, g_minus, g_z, tol);
  const BetaCoefficients b = beta_from_rates(g_plus, g_minus, g_z);
  cert.beta_nonneg = b.b1 >= -tol && b.b2 >= -tol && b.b3 >= -tol;

  cert.cp_verdict = cert.cp ? Verdict::yes : Verdict::no;
  cert.p_verdict = cert.p ? Verdict::yes : Verdict::no;
  if (!cert.p) {
    cert.d_verdict = Verdict::no;
  } else if (cert.cp || cert.beta_nonneg) {
    cert.d_verdict = Verdict::yes;
  } else {
    cert.d_verdict = Verdict::unknown;
  }

  auto mark = [&cert](const char* name, bool held) {
    cert.fired.emplace_back(std::string(name) + (held ? ":held" : ":failed"));
  };
  mark("cp.rates_nonneg", cert.cp);
  mark("p.rates_and_geometric_mean", cert.p);
  mark("d.beta_nonneg", cert.beta_nonneg);
  return cert;
}

SuperOperator dissipator_plus() { return lindblad_term(sigma_plus()); }
SuperOperator dissipator_minus() { return lindblad_term(sigma_minus()); }

SuperOperator dissipator_z() {
  return 0.25 * (SuperOperator::conjugation(sigma(3)) - SuperOperator::identity(2));
}

SuperOperator generator_from_rates(double g_plus, double g_minus, double g_z) {
  return g_plus * dissipator_plus() + g_minus * dissipator_minus() +
         g_z * dissipator_z();
}

}  // namespace qdiv::phasecov
