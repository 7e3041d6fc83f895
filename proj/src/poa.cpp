#include "stratq/poa.hpp"

#include <cmath>
#include <stdexcept>

#include "stratq/numerics.hpp"
#include "stratq/special.hpp"

namespace stratq {

double gamma_cost(double beta, const EconomicParams& econ) {
  if (!(beta > 0.0)) throw std::domain_error("gamma_cost: beta must be > 0");
  return econ.c_S * beta + econ.w * alpha(beta) / beta;
}

double gamma_cost_prime(double beta, const EconomicParams& econ) {
  if (!(beta > 0.0)) throw std::domain_error("gamma_cost_prime: beta must be > 0");
  const double ab = alpha(beta) / beta;
  return econ.c_S - econ.w * ab * ((2.0 + beta * beta) / beta - ab);
}

double beta_of_mu(double mu, const CostFunction& cf) {
  if (!(mu > 0.0)) throw std::invalid_argument("beta_of_mu: mu must be > 0");
  return std::sqrt(mu) * cf.c1(mu);
}

double f_poa(double beta, const EconomicParams& econ) {
  return gamma_cost(beta, econ) / gamma_cost(y_star(econ).y_star, econ);
}

double foc_c2_residual(double beta, double mu, const CostFunction& cf,
                       const EconomicParams& econ) {
  const double curvature = 1.0 + 2.0 * mu * cf.c2(mu) / cf.c1(mu);
  return gamma_cost_prime(beta, econ) - gamma_cost(beta, econ) / beta / curvature;
}

PoaMinimum min_poa(const CostFunction& cf, const EconomicParams& econ) {
  // The scaled limiting cost gamma(beta(mu))/sqrt(mu) blows up at both ends
  // of the bracket and has a unique interior minimum for the admitted cost
  // families.
  auto c2_of_mu = [&](double mu) {
    return gamma_cost(beta_of_mu(mu, cf), econ) / std::sqrt(mu);
  };
  const double mu_star = golden_min(c2_of_mu, 1e-6, 50.0);

  PoaMinimum out;
  out.mu_star = mu_star;
  out.beta_star = beta_of_mu(mu_star, cf);
  out.f_poa = f_poa(out.beta_star, econ);
  return out;
}

PoaMinimum min_poa_for_q(double q, const EconomicParams& econ) {
  if (!(q > 1.0)) throw std::domain_error("min_poa_for_q: q must exceed 1");
  const PoaMinimum out = min_poa(normalized_power_cost(q), econ);
  if (!(out.beta_star > y_star(econ).y_star)) {
    throw std::logic_error(
        "min_poa_for_q: the strategic coefficient should stay above y*");
  }
  return out;
}

PoaCurve poa_curve(const CostFunction& cf, const EconomicParams& econ,
                   double mu_lo, double mu_hi, int points) {
  if (points < 2) throw std::invalid_argument("poa_curve: need at least 2 points");
  PoaCurve out;
  out.mu = log_grid(mu_lo, mu_hi, static_cast<std::size_t>(points));
  const double gy = gamma_cost(y_star(econ).y_star, econ);
  out.beta.reserve(out.mu.size());
  out.gamma_val.reserve(out.mu.size());
  out.f_poa_val.reserve(out.mu.size());
  for (double mu : out.mu) {
    const double b = beta_of_mu(mu, cf);
    const double g = gamma_cost(b, econ);
    out.beta.push_back(b);
    out.gamma_val.push_back(g);
    out.f_poa_val.push_back(g / gy);
  }
  out.minimum = min_poa(cf, econ);
  return out;
}

}  // namespace stratq
