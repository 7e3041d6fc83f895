#pragma once

#include <vector>

#include "stratq/cost.hpp"
#include "stratq/equilibrium.hpp"
#include "stratq/types.hpp"

namespace stratq {

// Solutions of a(mu - a) = mu^3 c'(mu), the large-system limit of the
// per-server stationarity condition at load slope a.  The left and right
// sides cross at most twice; a single tangent touch is flagged.
struct LimitingFocRoots {
  double a = 0.0;
  std::vector<double> roots;  // ascending, each > a
  bool tangency = false;
};

enum class SelectionRule { largest_mu, lowest_cost };

struct StaffingResult {
  int N = 0;
  bool feasible = false;  // a verified equilibrium exists with a bounded rate
  double mu_star = 0.0;
  double mean_wait = 0.0;
  double cost = 0.0;  // c_S*N + w*lambda*mean_wait; +inf when infeasible
  SelectionRule rule = SelectionRule::largest_mu;
  EquilibriumReport report;
};

LimitingFocRoots limiting_foc_roots(double a, const CostFunction& cf);

// Largest load slope that still admits a limiting equilibrium, found by
// maximizing mu/2*(1+sqrt(1-4mu c'(mu))) over the set where the radicand is
// nonnegative.
double a_star(const CostFunction& cf);

// a* for c(mu) = c_E mu^p in closed form; benchmark for a_star.
double a_star_closed_form(double c_E, double p);

// Load-independent staffing N = ceil(lambda / a*).
int staff_ao(double lambda, const CostFunction& cf);

StaffingResult cost_of(int N, double lambda, const CostFunction& cf,
                       const EconomicParams& econ,
                       SelectionRule rule = SelectionRule::largest_mu);

// Exhaustive minimization of cost_of over N up to ceil(3 lambda/a*)+10,
// stopping once the staffing term alone can no longer win.  The parallel
// and serial variants return identical results; the serial one is the
// reference for tests and benchmarks.
StaffingResult n_opt_search(double lambda, const CostFunction& cf,
                            const EconomicParams& econ);
StaffingResult n_opt_search_serial(double lambda, const CostFunction& cf,
                                   const EconomicParams& econ);

// Square-root safety staffing lambda/mu + y* sqrt(lambda/mu) for a fixed
// service rate; the comparison point for the strategic-server rule.
double bmr_staffing(double lambda, double mu, const EconomicParams& econ);

}  // namespace stratq
