#pragma once

#include <vector>

#include "stratq/cost.hpp"
#include "stratq/types.hpp"

namespace stratq {

struct PoaMinimum {
  double beta_star = 0.0;
  double f_poa = 0.0;
  double mu_star = 0.0;
};

// Sampled anarchy curve along beta = sqrt(mu) c'(mu), plus the cost-optimal
// operating point on it.
struct PoaCurve {
  std::vector<double> mu;
  std::vector<double> beta;
  std::vector<double> gamma_val;
  std::vector<double> f_poa_val;
  PoaMinimum minimum;
};

// Limiting cost coefficient gamma(beta) = c_S beta + w alpha(beta)/beta.
double gamma_cost(double beta, const EconomicParams& econ);

// Closed-form gamma'(beta); the anchor for finite-difference checks.
double gamma_cost_prime(double beta, const EconomicParams& econ);

// Safety coefficient induced by the servers' effort cost: sqrt(mu) c'(mu).
double beta_of_mu(double mu, const CostFunction& cf);

// Anarchy ratio gamma(beta)/gamma(y*): limiting cost per sqrt-load under
// strategic servers at coefficient beta over the nonstrategic optimum.
double f_poa(double beta, const EconomicParams& econ);

// Stationarity residual of the scaled-cost minimization along the curve:
// gamma'(beta) - (gamma(beta)/beta) / (1 + 2 mu c''(mu)/c'(mu)).
double foc_c2_residual(double beta, double mu, const CostFunction& cf,
                       const EconomicParams& econ);

// Minimizes gamma(beta(mu))/sqrt(mu) over mu in (1e-6, 50] and reports the
// anarchy ratio at the minimizer.
PoaMinimum min_poa(const CostFunction& cf, const EconomicParams& econ);

// min_poa for c(mu) = mu^q/q, q > 1; checks beta_star stays above y*.
PoaMinimum min_poa_for_q(double q, const EconomicParams& econ);

PoaCurve poa_curve(const CostFunction& cf, const EconomicParams& econ,
                   double mu_lo, double mu_hi, int points);

}  // namespace stratq
