#pragma once

#include <vector>

#include "stratq/cost.hpp"
#include "stratq/types.hpp"

namespace stratq {

struct IdleDerivatives {
  double I;    // idle probability, in (0,1)
  double dI;   // d I / d mu1, strictly positive
  double d2I;  // d^2 I / d mu1^2, either sign
};

// Sign scan of the second derivative over a mu1 grid.  The curvature starts
// positive on at most one initial stretch and is negative after a single
// threshold; the scan reports the bracketing grid cell of that threshold (no
// closed form for it exists, and refinement beyond the grid is not needed).
struct ShapeScan {
  std::vector<double> mu1;
  std::vector<double> d2I;
  bool concave_throughout = false;
  double threshold_lo = 0.0;  // grid cell bracketing the sign change,
  double threshold_hi = 0.0;  // valid only when !concave_throughout
  int sign_changes = 0;       // count of sign flips along the grid
  bool decreasing_where_positive = true;
};

// Stability floor for the tagged rate: (lambda - (N-1)*mu)^+.
double mu1_floor(const TaggedProfile& profile, const SystemConfig& cfg);

// Steady-state probability that the tagged server is idle when the other
// N-1 servers run at a common rate.  Requires mu > lambda/N and
// mu1 > mu1_floor.  At mu1 == mu this collapses to 1 - lambda/(N*mu).
double idle_probability(const TaggedProfile& profile, const SystemConfig& cfg);

IdleDerivatives idle_derivatives(const TaggedProfile& profile, const SystemConfig& cfg);

ShapeScan shape_scan(const SystemConfig& cfg, double mu, int grid_size);

// Single-server utility 1 - lambda/mu - c(mu) for mu > lambda.
double mm1_utility(double mu, double lambda, const CostFunction& cf);

}  // namespace stratq
