#pragma once

#include <functional>
#include <string>
#include <vector>

namespace stratq {

// Effort cost c(mu) together with its first three derivatives.  The model
// requires c increasing and convex with c''' >= 0 on mu > 0; validate_cost
// checks a sampled grid against those requirements and against finite
// differences of c itself.
struct CostFunction {
  std::function<double(double)> c;
  std::function<double(double)> c1;
  std::function<double(double)> c2;
  std::function<double(double)> c3;

  enum class Family { custom, polynomial, normalized_power };
  Family family = Family::custom;
  // polynomial: c_E * mu^p.  normalized_power: mu^q / q.
  double c_E = 0.0;
  double p = 0.0;
  double q = 0.0;
};

CostFunction poly_cost(double c_E, double p);
CostFunction normalized_power_cost(double q);

struct CostValidation {
  bool pass = true;
  double max_c1_mismatch = 0.0;  // relative error of c1 vs central difference of c
  double max_c2_mismatch = 0.0;
  double max_c3_mismatch = 0.0;
  std::vector<std::string> violations;
};

// Samples the supplied grid (all rates > 0) and reports monotonicity or
// convexity violations plus the worst finite-difference mismatch of each
// supplied derivative.
CostValidation validate_cost(const CostFunction& cf, const std::vector<double>& grid);

// Default validation grid: 64 log-spaced points on [lo, hi].
std::vector<double> default_cost_grid(double lo, double hi);

}  // namespace stratq
