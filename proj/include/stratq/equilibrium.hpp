#pragma once

#include <vector>

#include "stratq/cost.hpp"
#include "stratq/types.hpp"

namespace stratq {

struct VerificationResult {
  bool pass = false;
  double slack = 0.0;  // inequality margin; negative means the root is rejected
};

struct VerifiedEquilibrium {
  double mu_star = 0.0;
  double utility = 0.0;        // 1 - lambda/(N mu) - c(mu) at the symmetric point
  double idle_fraction = 0.0;  // 1 - lambda/(N mu)
  double residual = 0.0;       // stationarity residual at mu_star
  double slack = 0.0;          // verification inequality margin
};

struct EquilibriumReport {
  std::vector<VerifiedEquilibrium> equilibria;  // ascending in mu_star, at most 2
  std::vector<double> rejected_roots;           // stationary points failing verification
  int bracket_count = 0;
  std::vector<double> root_residuals;
};

struct BestResponse {
  double mu1 = 0.0;
  double utility = 0.0;
  double cell = 0.0;  // spacing of the scan grid around mu1
};

// (lambda/(N^2 mu^2)) (N - lambda/mu + C(N, lambda/mu)) - c'(mu): the
// stationarity condition for a server facing N-1 peers at the same rate.
// Requires mu > lambda/N.
double foc_residual(double mu, const SystemConfig& cfg, const CostFunction& cf);

// All stationary rates on (lambda/N, mu_hi], located by a log-spaced sign
// scan plus bisection; roots closer than 1e-8 relative are merged (tangency).
// Returns 0, 1, or 2 rates sorted ascending.
std::vector<double> find_foc_roots(const SystemConfig& cfg, const CostFunction& cf,
                                   int grid_points = 2048);

// Checks c(mu*) <= c(lambda/N) + (1-rho/N)(1 + (1-rho/N + C/(N-1))^{-1})^{-1},
// the condition separating stationary points that are equilibria from those
// that are not.  The N=1 game has no peers and is rejected here; its
// equilibrium is the single-server closed form.
VerificationResult verify_equilibrium(double mu_star, const SystemConfig& cfg,
                                      const CostFunction& cf);

EquilibriumReport solve_equilibria(const SystemConfig& cfg, const CostFunction& cf);

// Grid argmax of one server's utility against peers fixed at mu_others.
// Independent oracle: a reported equilibrium must also be the global best
// response on this grid.
BestResponse best_response_scan(double mu_others, const SystemConfig& cfg,
                                const CostFunction& cf, int grid = 10000);

}  // namespace stratq
