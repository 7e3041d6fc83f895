#include "stratq/staffing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stratq/numerics.hpp"
#include "stratq/parallel.hpp"
#include "stratq/special.hpp"

namespace stratq {

namespace {

// Finite-lambda stand-in for admissibility: the asymptotic boundedness
// clause is only checkable as a sweep property, so a verified equilibrium
// with a rate at most this cap counts as admissible.
constexpr double kAdmissibleRateCap = 10.0;

constexpr double kInf = std::numeric_limits<double>::infinity();

StaffingResult n_opt_impl(double lambda, const CostFunction& cf,
                          const EconomicParams& econ, bool parallel) {
  if (!(lambda > 0.0)) throw std::invalid_argument("n_opt_search: lambda must be > 0");
  const int n_max = static_cast<int>(std::ceil(3.0 * lambda / a_star(cf))) + 10;

  StaffingResult best;
  best.cost = kInf;
  constexpr int kChunk = 16;
  for (int start = 2; start <= n_max; start += kChunk) {
    // The staffing term alone is increasing in N, so once it exceeds the
    // incumbent cost nothing beyond this point can win.
    if (best.feasible && econ.c_S * start > best.cost) break;
    const int end = std::min(n_max + 1, start + kChunk);
    std::vector<StaffingResult> block(static_cast<std::size_t>(end - start));
    auto eval = [&](std::size_t i) {
      block[i] = cost_of(start + static_cast<int>(i), lambda, cf, econ);
    };
    if (parallel) {
      parallel_for(block.size(), eval);
    } else {
      for (std::size_t i = 0; i < block.size(); ++i) eval(i);
    }
    for (auto& r : block) {
      if (r.feasible && r.cost < best.cost) best = std::move(r);
    }
  }
  return best;
}

}  // namespace

LimitingFocRoots limiting_foc_roots(double a, const CostFunction& cf) {
  if (!(a > 0.0)) throw std::invalid_argument("limiting_foc_roots: a must be > 0");
  auto g = [&](double mu) { return a * (mu - a) - mu * mu * mu * cf.c1(mu); };

  // Any root satisfies mu^2 c'(mu) < a, so cap the window where that fails.
  double cap = std::max(a, 1.0);
  int guard = 0;
  while (cap * cap * cf.c1(cap) <= a) {
    cap *= 2.0;
    if (++guard > 200) {
      throw std::domain_error("limiting_foc_roots: marginal cost too flat for a bounded root window");
    }
  }

  LimitingFocRoots out;
  out.a = a;
  const double peak = golden_max(g, a, cap, 1e-11 * std::max(1.0, cap));
  const double g_peak = g(peak);
  const double scale = std::max(a * cap, 1e-30);
  if (g_peak < -1e-13 * scale) return out;  // the sides never meet
  if (g_peak <= 1e-13 * scale) {
    out.roots.push_back(peak);  // tangent touch: one double root
    out.tangency = true;
    return out;
  }
  out.roots.push_back(bisect_root(g, a, peak, g(a), 1e-13));
  out.roots.push_back(bisect_root(g, peak, cap, g_peak, 1e-13));
  return out;
}

double a_star(const CostFunction& cf) {
  // Right edge of the feasible set {mu : 4 mu c'(mu) <= 1}.
  auto excess = [&](double mu) { return 4.0 * mu * cf.c1(mu) - 1.0; };
  double hi = 1.0;
  int guard = 0;
  while (excess(hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 200) {
      throw std::domain_error("a_star: marginal cost too flat; the feasible set is unbounded");
    }
  }
  double lo = hi;
  while (excess(lo) > 0.0) {
    lo /= 2.0;
    if (++guard > 400) throw std::logic_error("a_star: cannot bracket the feasible edge");
  }
  const double mu_max = bisect_root(excess, lo, hi, excess(lo));

  auto h = [&](double mu) {
    const double rad = std::max(0.0, 1.0 - 4.0 * mu * cf.c1(mu));
    return 0.5 * mu * (1.0 + std::sqrt(rad));
  };
  const double arg = golden_max(h, mu_max * 1e-9, mu_max, 1e-12 * mu_max);
  return h(arg);
}

double a_star_closed_form(double c_E, double p) {
  if (!(c_E > 0.0) || !(p >= 1.0)) {
    throw std::invalid_argument("a_star_closed_form: need c_E > 0 and p >= 1");
  }
  const double inner = (p + 1.0) / (p + 2.0) *
                       std::pow(1.0 / (c_E * p * (p + 2.0)), 1.0 / (p + 1.0));
  return std::pow(inner, (p + 1.0) / p);
}

int staff_ao(double lambda, const CostFunction& cf) {
  if (!(lambda > 0.0)) throw std::invalid_argument("staff_ao: lambda must be > 0");
  const double q = lambda / a_star(cf);
  // The nudge keeps integer-valued quotients from rounding up a full server
  // on fp noise; it is far below one unit of staffing otherwise.
  return static_cast<int>(std::ceil(q - 4.0 * std::numeric_limits<double>::epsilon() * q));
}

StaffingResult cost_of(int N, double lambda, const CostFunction& cf,
                       const EconomicParams& econ, SelectionRule rule) {
  if (N < 2) throw std::invalid_argument("cost_of: staffing below two servers");
  const SystemConfig cfg(lambda, N);

  StaffingResult out;
  out.N = N;
  out.rule = rule;
  out.cost = kInf;
  out.report = solve_equilibria(cfg, cf);
  for (const auto& eq : out.report.equilibria) {
    if (eq.mu_star > kAdmissibleRateCap) continue;
    const double w = mean_wait(cfg, eq.mu_star);
    const double cost = econ.c_S * N + econ.w * lambda * w;
    bool take = !out.feasible;
    if (!take) {
      take = rule == SelectionRule::largest_mu ? eq.mu_star > out.mu_star
                                               : cost < out.cost;
    }
    if (take) {
      out.feasible = true;
      out.mu_star = eq.mu_star;
      out.mean_wait = w;
      out.cost = cost;
    }
  }
  return out;
}

StaffingResult n_opt_search(double lambda, const CostFunction& cf,
                            const EconomicParams& econ) {
  return n_opt_impl(lambda, cf, econ, true);
}

StaffingResult n_opt_search_serial(double lambda, const CostFunction& cf,
                                   const EconomicParams& econ) {
  return n_opt_impl(lambda, cf, econ, false);
}

double bmr_staffing(double lambda, double mu, const EconomicParams& econ) {
  if (!(lambda > 0.0) || !(mu > 0.0)) {
    throw std::invalid_argument("bmr_staffing: rates must be positive");
  }
  const double load = lambda / mu;
  return load + y_star(econ).y_star * std::sqrt(load);
}

}  // namespace stratq
