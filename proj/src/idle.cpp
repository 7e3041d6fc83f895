#include "stratq/idle.hpp"

#include <cmath>
#include <stdexcept>

#include "stratq/special.hpp"

namespace stratq {

double mu1_floor(const TaggedProfile& profile, const SystemConfig& cfg) {
  return std::max(0.0, cfg.lambda - (cfg.N - 1) * profile.mu);
}

namespace {

void check_domain(const TaggedProfile& profile, const SystemConfig& cfg) {
  if (!(profile.mu > cfg.lambda / cfg.N))
    throw std::domain_error("idle: common rate must exceed lambda/N");
  if (!(profile.mu1 > mu1_floor(profile, cfg)))
    throw std::domain_error("idle: tagged rate at or below stability floor");
}

}  // namespace

double idle_probability(const TaggedProfile& profile, const SystemConfig& cfg) {
  check_domain(profile, cfg);
  const double N = cfg.N;
  const double rho = cfg.lambda / profile.mu;
  const double ratio = profile.mu1 / profile.mu;
  const double C = erlang_c(cfg.N, rho);
  // D > 0 throughout the domain: ratio > rho - (N-1) exactly when mu1 is
  // above the stability floor.
  const double D = N - (rho + 1.0 - ratio);
  const double denom = 1.0 - (rho / N) * (1.0 - 1.0 / ratio) * (1.0 + C / D);
  return (1.0 - rho / N) / denom;
}

IdleDerivatives idle_derivatives(const TaggedProfile& profile, const SystemConfig& cfg) {
  check_domain(profile, cfg);
  const double N = cfg.N;
  const double mu1 = profile.mu1;
  const double rho = cfg.lambda / profile.mu;
  const double ratio = mu1 / profile.mu;
  const double C = erlang_c(cfg.N, rho);
  const double D = N - (rho + 1.0 - ratio);
  const double I = idle_probability(profile, cfg);
  const double load_term = cfg.lambda / (N - rho);

  const double dI = (I * I / (mu1 * mu1)) * load_term *
                    (1.0 + C / D + (1.0 - ratio) * ratio * C / (D * D));
  const double d2I = -(2.0 * I * I * I / (mu1 * mu1 * mu1)) * load_term *
                     ((1.0 - rho * C / (D * D)) * (1.0 + C / D) +
                      (N - (1.0 - ratio) * (1.0 - ratio)) * ratio * C / (D * D * D));
  return {I, dI, d2I};
}

ShapeScan shape_scan(const SystemConfig& cfg, double mu, int grid_size) {
  if (grid_size < 16) throw std::invalid_argument("shape_scan: grid_size must be >= 16");
  if (!(mu > cfg.lambda / cfg.N))
    throw std::domain_error("shape_scan: common rate must exceed lambda/N");
  const double floor = std::max(0.0, cfg.lambda - (cfg.N - 1) * mu);
  const double lo = floor + 1e-4 * mu;
  const double hi = std::max(10.0 * mu, 10.0 * cfg.lambda);

  ShapeScan scan;
  scan.mu1.resize(grid_size);
  scan.d2I.resize(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (grid_size - 1);
    scan.mu1[i] = x;
    scan.d2I[i] = idle_derivatives({x, mu}, cfg).d2I;
  }

  bool seen_positive = false;
  for (int i = 0; i + 1 < grid_size; ++i) {
    const bool pos = scan.d2I[i] > 0.0;
    const bool pos_next = scan.d2I[i + 1] > 0.0;
    if (pos) {
      seen_positive = true;
      if (scan.d2I[i + 1] >= scan.d2I[i]) scan.decreasing_where_positive = false;
    }
    if (pos != pos_next) {
      ++scan.sign_changes;
      scan.threshold_lo = scan.mu1[i];
      scan.threshold_hi = scan.mu1[i + 1];
    }
  }
  scan.concave_throughout = !seen_positive;
  return scan;
}

double mm1_utility(double mu, double lambda, const CostFunction& cf) {
  if (!(mu > lambda)) throw std::domain_error("mm1_utility: need mu > lambda");
  return 1.0 - lambda / mu - cf.c(mu);
}

}  // namespace stratq
