#include "stratq/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stratq/idle.hpp"
#include "stratq/numerics.hpp"
#include "stratq/special.hpp"

namespace stratq {

namespace {

// Upper end of the root scan: past the point where marginal cost beats
// every possible idle gain, doubled until the residual is actually
// negative so the last grid cell closes any bracket.
double scan_upper_bound(const SystemConfig& cfg, const CostFunction& cf,
                        const std::function<double(double)>& f) {
  double hi = 2.0 * cfg.lambda / cfg.N;
  int guard = 0;
  while (cf.c1(hi) <= 2.0 / cfg.lambda && f(hi) >= 0.0) {
    hi *= 2.0;
    if (++guard > 200) break;
  }
  guard = 0;
  while (f(hi) >= 0.0) {
    hi *= 2.0;
    if (++guard > 200) {
      throw std::domain_error(
          "find_foc_roots: residual never turns negative; the marginal cost "
          "vanishes at large rates");
    }
  }
  return hi;
}

std::vector<double> foc_roots_impl(const SystemConfig& cfg, const CostFunction& cf,
                                   int grid_points, int* brackets) {
  if (grid_points < 16) {
    throw std::invalid_argument("find_foc_roots: grid too coarse");
  }
  const double lo = (cfg.lambda / cfg.N) * (1.0 + 1e-9);
  auto f = [&](double mu) { return foc_residual(mu, cfg, cf); };
  const double hi = scan_upper_bound(cfg, cf, f);

  std::vector<double> roots;
  auto grid = log_grid(lo, hi, static_cast<std::size_t>(grid_points));
  double prev = f(grid.front());
  if (prev == 0.0) roots.push_back(grid.front());
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double cur = f(grid[i]);
    if (cur == 0.0) {
      roots.push_back(grid[i]);
    } else if (prev != 0.0 && (prev > 0.0) != (cur > 0.0)) {
      roots.push_back(bisect_root(f, grid[i - 1], grid[i], prev, 1e-10));
    }
    prev = cur;
  }
  if (brackets) *brackets = static_cast<int>(roots.size());

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double r : roots) {
    if (!merged.empty() && r - merged.back() <= 1e-8 * r) {
      merged.back() = 0.5 * (merged.back() + r);  // tangency: one double root
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace

double foc_residual(double mu, const SystemConfig& cfg, const CostFunction& cf) {
  if (!(mu > cfg.lambda / cfg.N)) {
    throw std::domain_error("foc_residual: mu must exceed lambda/N");
  }
  const double N = cfg.N;
  const double rho = cfg.lambda / mu;
  return cfg.lambda / (N * N * mu * mu) * (N - rho + erlang_c(cfg.N, rho)) - cf.c1(mu);
}

std::vector<double> find_foc_roots(const SystemConfig& cfg, const CostFunction& cf,
                                   int grid_points) {
  return foc_roots_impl(cfg, cf, grid_points, nullptr);
}

VerificationResult verify_equilibrium(double mu_star, const SystemConfig& cfg,
                                      const CostFunction& cf) {
  if (cfg.N == 1) {
    throw std::invalid_argument(
        "verify_equilibrium: single-server instances have no peer term; use "
        "the single-server utility directly");
  }
  if (!(mu_star > cfg.lambda / cfg.N)) {
    throw std::domain_error("verify_equilibrium: mu_star must exceed lambda/N");
  }
  const double N = cfg.N;
  const double rho = cfg.lambda / mu_star;
  const double idle = 1.0 - rho / N;
  const double rhs = cf.c(cfg.lambda / N) +
                     idle / (1.0 + 1.0 / (idle + erlang_c(cfg.N, rho) / (N - 1.0)));
  const double slack = rhs - cf.c(mu_star);
  return {slack >= 0.0, slack};
}

EquilibriumReport solve_equilibria(const SystemConfig& cfg, const CostFunction& cf) {
  if (cfg.N < 2) {
    throw std::invalid_argument("solve_equilibria: needs at least two servers");
  }
  EquilibriumReport rep;
  const auto roots = foc_roots_impl(cfg, cf, 2048, &rep.bracket_count);
  for (double root : roots) {
    rep.root_residuals.push_back(foc_residual(root, cfg, cf));
    const auto v = verify_equilibrium(root, cfg, cf);
    if (v.pass) {
      const double idle = 1.0 - cfg.lambda / (cfg.N * root);
      rep.equilibria.push_back({root, idle - cf.c(root), idle,
                                rep.root_residuals.back(), v.slack});
    } else {
      rep.rejected_roots.push_back(root);
    }
  }
  if (rep.equilibria.size() == 2 &&
      !(rep.equilibria[1].utility > rep.equilibria[0].utility)) {
    throw std::logic_error(
        "solve_equilibria: the larger equilibrium rate must yield the larger "
        "symmetric utility");
  }
  return rep;
}

BestResponse best_response_scan(double mu_others, const SystemConfig& cfg,
                                const CostFunction& cf, int grid) {
  if (!(mu_others > cfg.lambda / cfg.N)) {
    throw std::domain_error("best_response_scan: peer rate must exceed lambda/N");
  }
  if (grid < 16) throw std::invalid_argument("best_response_scan: grid too coarse");

  const double floor = std::max(0.0, cfg.lambda - (cfg.N - 1) * mu_others);
  const double lo = floor + 1e-9 * std::max(1.0, floor);
  // Idle gains are at most 1, so once the cost exceeds 2 the tail of the
  // grid is dominated; cap the doubling for bounded custom costs.
  double hi = std::max({2.0 * cfg.lambda / cfg.N, mu_others, floor}) + 1.0;
  for (int i = 0; i < 60 && cf.c(hi) < 2.0; ++i) hi *= 2.0;

  const double cell = (hi - lo) / static_cast<double>(grid - 1);
  BestResponse best{lo, -std::numeric_limits<double>::infinity(), cell};
  for (int i = 0; i < grid; ++i) {
    const double mu1 =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double u =
        idle_probability({mu1, mu_others}, cfg) - cf.c(mu1);
    if (u > best.utility) best = {mu1, u, cell};
  }
  return best;
}

}  // namespace stratq
