#include "qdiv/gpc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qdiv::gpc {
namespace {

template <typename T>
void require_rate_arity(const std::vector<T>& g, int d) {
  if (static_cast<int>(g.size()) != d + 1)
    throw std::invalid_argument("generalized Pauli channel needs d+1 rates");
}

}  // namespace

SuperOperator dephasing_channel(const MubFamily& m, int alpha) {
  SuperOperator s = SuperOperator::zero(m.dim());
  for (int k = 0; k < m.dim(); ++k)
    s = s + SuperOperator::conjugation(m.projector(alpha, k));
  return s;
}

SuperOperator gpc_map(const MubFamily& m, const std::vector<double>& p) {
  const int d = m.dim();
  if (static_cast<int>(p.size()) != d + 2)
    throw std::invalid_argument("generalized Pauli channel needs d+2 probabilities");
  const double dd = static_cast<double>(d);
  SuperOperator s = ((dd * p[0] - 1.0) / (dd - 1.0)) * SuperOperator::identity(d);
  for (int alpha = 1; alpha <= d + 1; ++alpha)
    s = s + (dd / (dd - 1.0) * p[static_cast<std::size_t>(alpha)]) *
                dephasing_channel(m, alpha);
  return s;
}

std::vector<double> eigenvalues_at(const GpcRates& r, double t, double tol) {
  require_rate_arity(r.gamma, r.d);
  std::vector<double> gammas(r.gamma.size());
  for (std::size_t a = 0; a < r.gamma.size(); ++a)
    gammas[a] = integrate(r.gamma[a], 0.0, t, tol);
  return eigenvalues_from_accumulated(gammas);
}

std::vector<double> eigenvalues_from_accumulated(const std::vector<double>& gammas) {
  const double total = std::accumulate(gammas.begin(), gammas.end(), 0.0);
  std::vector<double> lambda(gammas.size());
  for (std::size_t a = 0; a < gammas.size(); ++a)
    lambda[a] = std::exp(-(total - gammas[a]));
  return lambda;
}

std::vector<double> probabilities_from_eigenvalues(const std::vector<double>& lambda,
                                                   int d) {
  if (static_cast<int>(lambda.size()) != d + 1)
    throw std::invalid_argument("expected d+1 eigenvalues");
  const double dd = static_cast<double>(d);
  const double sum = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  std::vector<double> p(lambda.size() + 1);
  p[0] = (1.0 + (dd - 1.0) * sum) / (dd * dd);
  for (std::size_t a = 0; a < lambda.size(); ++a)
    p[a + 1] = (dd - 1.0) / (dd * dd) * (1.0 + dd * lambda[a] - sum);
  return p;
}

std::vector<double> eigenvalues_from_probabilities(const std::vector<double>& p,
                                                   int d) {
  if (static_cast<int>(p.size()) != d + 2)
    throw std::invalid_argument("expected d+2 probabilities");
  const double dd = static_cast<double>(d);
  std::vector<double> lambda(p.size() - 1);
  for (std::size_t a = 1; a < p.size(); ++a)
    lambda[a - 1] = (dd * (p[0] + p[a]) - 1.0) / (dd - 1.0);
  return lambda;
}

bool d_sufficient(const std::vector<double>& g, int d, double tol) {
  require_rate_arity(g, d);
  const double sum = std::accumulate(g.begin(), g.end(), 0.0);
  const double max = *std::max_element(g.begin(), g.end());
  return sum - (d - 1.0) * max >= -tol;
}

std::vector<double> j_alpha(const std::vector<double>& g, int d) {
  require_rate_arity(g, d);
  const double sum = std::accumulate(g.begin(), g.end(), 0.0);
  std::vector<double> j(g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    j[a] = 0.5 * (sum / (d - 1.0) - g[a]);
  return j;
}

bool p_necessary(const std::vector<double>& g, int d, double tol) {
  require_rate_arity(g, d);
  const double sum = std::accumulate(g.begin(), g.end(), 0.0);
  const double max = *std::max_element(g.begin(), g.end());
  return sum - max >= -tol;
}

bool p_sufficient_pair(const std::vector<double>& g, int d, double tol) {
  require_rate_arity(g, d);
  for (std::size_t b = 0; b < g.size(); ++b)
    for (std::size_t a = 0; a < g.size(); ++a)
      if (a != b && g[a] + (d - 1.0) * g[b] < -tol) return false;
  return true;
}

int negative_rate_count(const std::vector<double>& g, double tol) {
  return static_cast<int>(
      std::count_if(g.begin(), g.end(), [tol](double x) { return x < -tol; }));
}

bool p_sufficient_k_applicable(const std::vector<double>& g, int d, double tol) {
  require_rate_arity(g, d);
  const int k = negative_rate_count(g, tol);
  return 2 * k <= d + 1 && d - 2 * (k - 1) > 0;
}

bool p_sufficient_k(const std::vector<double>& g, int d, double tol) {
  require_rate_arity(g, d);
  const int k = negative_rate_count(g, tol);
  if (k == 0) return true;
  if (!p_sufficient_k_applicable(g, d, tol)) return false;
  const double min = *std::min_element(g.begin(), g.end());
  const double bound = -(d + (k - 1.0)) / (d - (k - 1.0)) * min;
  double best = -std::numeric_limits<double>::infinity();
  for (double x : g)
    if (x >= -tol) best = std::max(best, x);
  return best >= bound - tol;
}

GpcCertificate classify_pointwise(const std::vector<double>& g, int d, double tol) {
  require_rate_arity(g, d);
  GpcCertificate cert;
  cert.cp = std::all_of(g.begin(), g.end(), [tol](double x) { return x >= -tol; });
  cert.p_necessary = p_necessary(g, d, tol);
  cert.p_sufficient_pair = p_sufficient_pair(g, d, tol);
  cert.p_sufficient_k_applicable = p_sufficient_k_applicable(g, d, tol);
  cert.p_sufficient_k = p_sufficient_k(g, d, tol);
  cert.d_sufficient = d_sufficient(g, d, tol);

  cert.cp_verdict = cert.cp ? Verdict::yes : Verdict::no;
  if (!cert.p_necessary) {
    cert.p_verdict = Verdict::no;
  } else if (cert.cp || cert.p_sufficient_pair ||
             (cert.p_sufficient_k_applicable && cert.p_sufficient_k)) {
    cert.p_verdict = Verdict::yes;
  } else {
    cert.p_verdict = Verdict::unknown;
  }
  if (cert.p_verdict == Verdict::no) {
    cert.d_verdict = Verdict::no;
  } else if (cert.cp || cert.d_sufficient) {
    cert.d_verdict = Verdict::yes;
  } else {
    cert.d_verdict = Verdict::unknown;
  }

  auto mark = [&cert](const char* name, bool held) {
    cert.fired.emplace_back(std::string(name) + (held ? ":held" : ":failed"));
  };
  mark("cp.rates_nonneg", cert.cp);
  mark("p.necessary_sum", cert.p_necessary);
  mark("p.pairwise_weighted", cert.p_sufficient_pair);
  if (cert.p_sufficient_k_applicable)
    mark("p.k_negative_bound", cert.p_sufficient_k);
  else
    cert.fired.emplace_back("p.k_negative_bound:inapplicable");
  mark("d.sum_dominates_max", cert.d_sufficient);
  return cert;
}

}  // namespace qdiv::gpc
