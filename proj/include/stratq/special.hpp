#pragma once

#include <utility>

#include "stratq/types.hpp"

namespace stratq {

// Safety coefficient y* minimizing c_S*y + w*alpha(y)/y, with the value of
// alpha and of the objective at the minimizer.
struct BmrConstants {
  double y_star;
  double alpha_at;
  double objective;
};

// Probability that an arrival to an M/M/N queue with offered load rho must
// wait.  Computed through the blocking-probability recurrence, so large N
// stays exact; requires 0 <= rho < N.
double erlang_c(int N, double rho);

// (phi(x), Phi(x)) for the standard normal.
std::pair<double, double> normal_pdf_cdf(double x);

// alpha(y) = (1 + y*Phi(y)/phi(y))^{-1} for y > 0, strictly decreasing with
// alpha(0+) = 1.  Underflows to 0 once phi(y) is sub-denormal (y beyond ~38),
// which is the correct double for the true value there.
double alpha(double y);

BmrConstants y_star(const EconomicParams& econ);

// Mean steady-state waiting time of M/M/N at common rate mu:
// (1/lambda) * (rho/(N-rho)) * C(N, rho).  Requires N*mu > lambda.
double mean_wait(const SystemConfig& cfg, double mu);

// Two-sided 95% Student-t critical value for the given degrees of freedom.
double student_t_975(int df);

}  // namespace stratq
