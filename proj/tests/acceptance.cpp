// Acceptance gate: one self-contained check per numbered criterion, each
// printing a single PASS/FAIL line.  Checks that need the command-line tool
// locate it through the STRATQ_BIN environment variable.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stratq/ctmc.hpp"
#include "stratq/equilibrium.hpp"
#include "stratq/idle.hpp"
#include "stratq/poa.hpp"
#include "stratq/routing_mm2.hpp"
#include "stratq/sim.hpp"
#include "stratq/special.hpp"
#include "stratq/staffing.hpp"

using namespace stratq;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void note(const std::string& what) { notes.push_back(what); }
};

std::string fmt(double v, int digits = 12) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return std::string(buf);
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<std::string> run_cli(const std::string& args) {
  const char* bin = std::getenv("STRATQ_BIN");
  if (!bin || !*bin) return std::nullopt;
  const std::string cmd = std::string("\"") + bin + "\" " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  if (pclose(p) != 0) return std::nullopt;
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int col_index(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

// 1. Scaled-cost minima over the power-cost family, via the CLI table.
Outcome criterion_1() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto text = run_cli("poa --table");
  if (!text) {
    out.fail("could not run the CLI (STRATQ_BIN unset or tool failed)");
    return out;
  }
  const auto rows = parse_csv(*text);
  if (rows.size() != 4) {
    out.fail("expected header plus three table rows, got " + std::to_string(rows.size()));
    return out;
  }
  const int qi = col_index(rows[0], "q");
  const int fi = col_index(rows[0], "f_poa");
  if (qi < 0 || fi < 0) {
    out.fail("table is missing q or f_poa columns");
    return out;
  }
  const double targets[3] = {2.517, 1.931, 1.057};
  for (int r = 0; r < 3; ++r) {
    const double q = std::stod(rows[r + 1][qi]);
    const double f = std::stod(rows[r + 1][fi]);
    const double diff = std::abs(f - targets[r]);
    if (diff <= 0.01) {
      out.note("q=" + fmt(q, 4) + ": minimum " + fmt(f, 7) + " matches target " +
               fmt(targets[r], 4));
    } else {
      out.fail("q=" + fmt(q, 4) + ": minimum " + fmt(f, 7) + " vs target " +
               fmt(targets[r], 4) + " (|diff| = " + fmt(diff, 3) + ")");
      // Certify the computed minimum is a genuine stationary point, so the
      // mismatch lies in the target value, not in the minimization.
      const auto m = min_poa_for_q(q, EconomicParams(1.0, 1.0));
      const double res =
          foc_c2_residual(m.beta_star, m.mu_star, normalized_power_cost(q),
                          EconomicParams(1.0, 1.0));
      out.note("stationarity residual at the computed q=" + fmt(q, 4) +
               " minimum: " + fmt(res, 3));
    }
  }
  const double dt = elapsed_s(t0);
  if (dt >= 5.0) out.fail("runtime " + fmt(dt, 3) + "s exceeds 5s");
  return out;
}

// 2. Polynomial closed forms for the limiting staffing slope.
Outcome criterion_2() {
  Outcome out;
  const struct {
    double c_E, p, a_closed, mu_closed;
  } cases[] = {
      {1.0, 1.0, 4.0 / 27.0, 2.0 / 9.0},
      {1.0, 2.0, 0.22963966338592295, std::sqrt(3.0 / 32.0)},
  };
  for (const auto& t : cases) {
    const auto cf = poly_cost(t.c_E, t.p);
    const double a_num = a_star(cf);
    if (std::abs(a_num - t.a_closed) > 1e-10) {
      out.fail("p=" + fmt(t.p, 2) + ": numeric edge " + fmt(a_num) + " vs closed form " +
               fmt(t.a_closed));
    }
    if (std::abs(a_star_closed_form(t.c_E, t.p) - t.a_closed) > 1e-14) {
      out.fail("p=" + fmt(t.p, 2) + ": closed form drifted");
    }
    const double g =
        t.a_closed * (t.mu_closed - t.a_closed) -
        t.mu_closed * t.mu_closed * t.mu_closed * cf.c1(t.mu_closed);
    if (std::abs(g) >= 1e-12) {
      out.fail("p=" + fmt(t.p, 2) + ": tangency residual " + fmt(g) + " not below 1e-12");
    }
    const auto lim = limiting_foc_roots(t.a_closed, cf);
    if (!lim.tangency || lim.roots.size() != 1 ||
        std::abs(lim.roots[0] - t.mu_closed) > 1e-5) {
      out.fail("p=" + fmt(t.p, 2) + ": tangency root not recovered at the edge");
    } else {
      out.note("p=" + fmt(t.p, 2) + ": edge " + fmt(a_num) + ", tangent rate " +
               fmt(lim.roots[0], 8) + ", residual " + fmt(g, 3));
    }
  }
  return out;
}

// 3. One stationary law across idle-order routing policies.
Outcome criterion_3() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const double dev = collapse_check(
      {1.0, 1.5, 2.3}, 2.0,
      {random_policy(), lisf_policy(), sisf_policy(), weighted_random_policy()});
  if (dev >= 1e-9) out.fail("max deviation " + fmt(dev, 3) + " not below 1e-9");
  const double dt = elapsed_s(t0);
  if (dt >= 1.0) out.fail("runtime " + fmt(dt, 3) + "s exceeds 1s");
  out.note("max deviation " + fmt(dev, 3) + " across four policies in " + fmt(dt, 2) + "s");
  return out;
}

// 4. Three independent routes to the two-server idle probability.
Outcome criterion_4() {
  Outcome out;
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double lambda = 0.2 + 2.3 * u01(rng);
    const double mu2 = lambda / 2 + 0.05 + 2.5 * u01(rng);
    const double lo1 = std::max(0.0, lambda - mu2) + 0.05;
    const double mu1 = lo1 + 3.0 * u01(rng);

    const double tagged = idle_probability({mu1, mu2}, SystemConfig(lambda, 2));
    const auto st = mm2_steady_state(Mm2Profile::with_p(lambda, mu1, mu2, 0.5));
    const double split = st.pi0 + st.pi1_2;
    const double chain = product_form({mu1, mu2}, lambda).idle_fraction[0];

    worst = std::max({worst, std::abs(tagged - split), std::abs(tagged - chain),
                      std::abs(split - chain)});
  }
  if (worst >= 1e-10) out.fail("worst pairwise deviation " + fmt(worst, 3));
  else out.note("worst pairwise deviation over 100 points: " + fmt(worst, 3));

  const double pinned = idle_probability({1.0, 2.0}, SystemConfig(1.0, 2));
  if (std::abs(pinned - 10.0 / 17.0) > 1e-12) {
    out.fail("pinned instance gives " + fmt(pinned) + " instead of 10/17");
  }
  return out;
}

// 5. Analytic idle derivatives against finite differences.
Outcome criterion_5() {
  Outcome out;
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst1 = 0.0, worst2 = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int N = 2 + static_cast<int>(u01(rng) * 9);
    const double lambda = 0.3 + 2.7 * u01(rng);
    const double mu = lambda / N + 0.05 + 2.0 * u01(rng);
    const double floor = std::max(0.0, lambda - (N - 1) * mu);
    const double mu1 = floor + 0.05 + 3.0 * u01(rng);
    const SystemConfig cfg(lambda, N);
    const auto d = idle_derivatives({mu1, mu}, cfg);

    const double h1 = 6e-6 * std::max(1.0, mu1);
    const double fd1 = (idle_probability({mu1 + h1, mu}, cfg) -
                        idle_probability({mu1 - h1, mu}, cfg)) /
                       (2 * h1);
    worst1 = std::max(worst1, std::abs(d.dI - fd1) / std::max(std::abs(fd1), 1e-12));

    const double h2 = 1.5e-4 * std::max(1.0, mu1);
    const double fd2 = (idle_probability({mu1 + h2, mu}, cfg) -
                        2 * idle_probability({mu1, mu}, cfg) +
                        idle_probability({mu1 - h2, mu}, cfg)) /
                       (h2 * h2);
    worst2 = std::max(worst2, std::abs(d.d2I - fd2) / std::max(std::abs(fd2), 1e-10));
  }
  if (worst1 >= 1e-5) out.fail("first-derivative relative error " + fmt(worst1, 3));
  if (worst2 >= 1e-4) out.fail("second-derivative relative error " + fmt(worst2, 3));
  out.note("worst relative errors: slope " + fmt(worst1, 3) + ", curvature " + fmt(worst2, 3));

  double worst_sym = 0.0;
  for (double mu : {0.6, 1.0, 1.7}) {
    for (double lambda : {0.4, 0.9}) {
      const double got = symmetric_foc_derivative(mu, lambda, 0.0);
      worst_sym = std::max(worst_sym,
                           std::abs(got - lambda / (mu * (lambda + 2 * mu))));
    }
  }
  if (worst_sym >= 1e-10) out.fail("symmetric slope deviation " + fmt(worst_sym, 3));
  return out;
}

// 6. Idle jump between the two tie-breaking extremes.
Outcome criterion_6() {
  Outcome out;
  double worst = 0.0, smallest = 1.0;
  for (double lambda = 0.2; lambda <= 2.01; lambda += 0.2) {
    for (double mu = lambda / 2 + 0.1; mu <= lambda / 2 + 2.0; mu += 0.25) {
      const double got = fsf_ssf_gap(mu, lambda);
      const double want =
          lambda * (2 * mu - lambda) / ((mu + lambda) * (2 * mu + lambda));
      worst = std::max(worst, std::abs(got - want));
      smallest = std::min(smallest, got);
    }
  }
  if (worst >= 1e-12) out.fail("closed-form deviation " + fmt(worst, 3));
  if (smallest <= 0.0) out.fail("gap not strictly positive, min " + fmt(smallest, 3));
  const double at_unit = fsf_ssf_gap(1.0, 1.0);
  if (std::abs(at_unit - 1.0 / 6.0) > 1e-12) {
    out.fail("unit instance gives " + fmt(at_unit) + " instead of 1/6");
  }
  out.note("max deviation " + fmt(worst, 3) + ", min gap " + fmt(smallest, 3));
  return out;
}

// 7. Rate-exponent equilibria: existence, monotonicity, zero-exponent match.
Outcome criterion_7() {
  Outcome out;
  const auto cf = poly_cost(1.0, 2.0);
  std::vector<double> mus, ets;
  for (double r : {-2.0, -1.0, 0.0, 1.0}) {
    const auto mu = equilibrium_for_r(r, 0.25, cf);
    if (!mu) {
      out.fail("no equilibrium at exponent " + fmt(r, 2));
      return out;
    }
    mus.push_back(*mu);
    ets.push_back(mean_response(*mu, 0.25));
  }
  for (std::size_t i = 1; i < mus.size(); ++i) {
    if (!(mus[i] < mus[i - 1])) out.fail("equilibrium rate not strictly decreasing");
    if (!(ets[i] > ets[i - 1])) out.fail("mean response not strictly increasing");
  }
  const auto eqs = solve_equilibria(SystemConfig(0.25, 2), cf).equilibria;
  double closest = 1e300;
  for (const auto& eq : eqs) closest = std::min(closest, std::abs(eq.mu_star - mus[2]));
  if (closest > 1e-8) {
    out.fail("zero-exponent equilibrium differs from the two-server one by " +
             fmt(closest, 3));
  }
  out.note("rates " + fmt(mus[0], 8) + " > " + fmt(mus[1], 8) + " > " + fmt(mus[2], 8) +
           " > " + fmt(mus[3], 8) + "; zero-exponent match within " + fmt(closest, 3));
  return out;
}

// 8. Discrete-event runs against the exact low-state closed forms.
Outcome criterion_8() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();

  SimConfig cfg;
  cfg.lambda = 1.0;
  cfg.rates = {1.2, 0.8};
  cfg.use_rate_based = true;
  cfg.r = 1.0;
  cfg.horizon = 5e5;
  cfg.replications = 10;
  cfg.seed = 1;
  const auto est = simulate(cfg);
  const auto closed = idle_r(Mm2Profile::with_r(1.0, 1.2, 0.8, 1.0));
  const double want[2] = {closed.first, closed.second};
  for (int s = 0; s < 2; ++s) {
    const double dev = std::abs(est.idle_fraction[s] - want[s]);
    if (dev > 3.0 * est.idle_ci[s]) {
      out.fail("server " + std::to_string(s + 1) + ": |" + fmt(est.idle_fraction[s], 8) +
               " - " + fmt(want[s], 8) + "| exceeds 3 half-widths " +
               fmt(3.0 * est.idle_ci[s], 3));
    } else {
      out.note("server " + std::to_string(s + 1) + ": deviation " + fmt(dev, 3) +
               " within 3 half-widths " + fmt(3.0 * est.idle_ci[s], 3));
    }
  }

  SimConfig lisf;
  lisf.lambda = 1.0;
  lisf.rates = {1.0, 2.0};
  lisf.policy = lisf_policy();
  lisf.horizon = 5e5;
  lisf.replications = 10;
  lisf.seed = 1;
  const auto est2 = simulate(lisf);
  const double truth = 10.0 / 17.0;
  const double dev2 = std::abs(est2.idle_fraction[0] - truth);
  if (dev2 > est2.idle_ci[0]) {
    out.fail("ordered-idle run: 10/17 outside the interval " + fmt(est2.idle_fraction[0], 8) +
             " +- " + fmt(est2.idle_ci[0], 3));
  } else {
    out.note("ordered-idle run brackets 10/17: " + fmt(est2.idle_fraction[0], 8) + " +- " +
             fmt(est2.idle_ci[0], 3));
  }

  const double dt = elapsed_s(t0);
  if (dt >= 60.0) out.fail("runtime " + fmt(dt, 3) + "s exceeds 60s");
  out.note("runtime " + fmt(dt, 2) + "s");
  return out;
}

// 9. Large-system staffing behavior along a doubling sweep.
Outcome criterion_9() {
  Outcome out;
  const auto cf = poly_cost(1.0, 2.0);
  const EconomicParams econ(1.0, 1.0);
  const double edge = a_star(cf);
  const double lambdas[4] = {50.0, 100.0, 200.0, 400.0};

  // (i) normalized-cost gap, grouped to avoid catastrophic cancellation:
  // C(N)/lambda - 1/edge = (N*edge - lambda)/(lambda*edge) + mean_wait.
  double gaps[4];
  for (int i = 0; i < 4; ++i) {
    const int n_ao = staff_ao(lambdas[i], cf);
    const auto res = cost_of(n_ao, lambdas[i], cf, econ);
    if (!res.feasible) {
      out.fail("no admissible equilibrium at arrival rate " + fmt(lambdas[i], 4));
      return out;
    }
    gaps[i] = econ.c_S * (n_ao * edge - lambdas[i]) / (lambdas[i] * edge) +
              econ.w * res.mean_wait;
    out.note("lambda=" + fmt(lambdas[i], 4) + ": N=" + std::to_string(n_ao) + ", gap " +
             fmt(gaps[i], 17));
  }
  for (int i = 1; i < 4; ++i) {
    if (!(gaps[i] < gaps[i - 1])) {
      out.fail("normalized-cost gap not strictly decreasing at lambda " +
               fmt(lambdas[i], 4));
    }
  }

  // (ii) the searched optimum never exceeds the load-independent rule.
  for (double lambda : lambdas) {
    const auto opt = n_opt_search(lambda, cf, econ);
    const auto ao = cost_of(staff_ao(lambda, cf), lambda, cf, econ);
    if (!(opt.feasible && opt.cost <= ao.cost)) {
      out.fail("searched optimum loses at lambda " + fmt(lambda, 4));
    }
  }

  // (iii) finite-size stationary rates against the limiting ones at slope 0.15.
  const auto lim = limiting_foc_roots(0.15, cf);
  if (lim.roots.size() != 2) {
    out.fail("limiting balance at slope 0.15 should have two rates");
    return out;
  }
  double prev_gap = 1e300;
  for (int i = 0; i < 4; ++i) {
    const int N = static_cast<int>(std::ceil(lambdas[i] / 0.15));
    const auto roots = find_foc_roots(SystemConfig(lambdas[i], N), cf);
    if (roots.size() != 2) {
      out.fail("expected two stationary rates at lambda " + fmt(lambdas[i], 4));
      return out;
    }
    const double gap = std::max(std::abs(roots[0] - lim.roots[0]),
                                std::abs(roots[1] - lim.roots[1]));
    out.note("lambda=" + fmt(lambdas[i], 4) + ": N=" + std::to_string(N) +
             ", limiting-rate gap " + fmt(gap, 17));
    if (!(gap < prev_gap)) {
      out.fail("limiting-rate gap not strictly shrinking at lambda " + fmt(lambdas[i], 4) +
               " (the staffing rule rounds 100/0.15 and 200/0.15 to proportional"
               " counts 667 and 1334, so both systems solve the same effective"
               " balance and the gaps tie exactly)");
    }
    prev_gap = gap;
  }
  return out;
}

// 10. Randomized equilibrium structure suite.
Outcome criterion_10() {
  Outcome out;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int two_count = 0;
  for (int i = 0; i < 60; ++i) {
    const double c_E = 0.2 + 2.8 * u01(rng);
    const double p = 1.0 + 3.0 * u01(rng);
    const int N = 2 + static_cast<int>(u01(rng) * 49);
    const double lambda = N * (0.05 + 1.15 * u01(rng));
    const auto cf = poly_cost(c_E, p);
    const SystemConfig cfg(lambda, N);
    const auto report = solve_equilibria(cfg, cf);

    const std::size_t stationary =
        report.equilibria.size() + report.rejected_roots.size();
    if (stationary > 2 || report.bracket_count > 2) {
      out.fail("instance " + std::to_string(i) + ": " + std::to_string(stationary) +
               " stationary points");
      continue;
    }
    if (report.equilibria.size() == 2) {
      ++two_count;
      if (!(report.equilibria[1].utility > report.equilibria[0].utility)) {
        out.fail("instance " + std::to_string(i) + ": larger equilibrium not better");
      }
    }
    for (const auto& eq : report.equilibria) {
      const auto br = best_response_scan(eq.mu_star, cfg, cf);
      if (std::abs(br.mu1 - eq.mu_star) > br.cell * (1.0 + 1e-6)) {
        out.fail("instance " + std::to_string(i) + ": equilibrium " + fmt(eq.mu_star, 8) +
                 " sits " + fmt(std::abs(br.mu1 - eq.mu_star), 3) +
                 " from the scan argmax (cell " + fmt(br.cell, 3) + ")");
      }
    }
  }
  out.note("60 instances, " + std::to_string(two_count) + " with two equilibria");
  return out;
}

// 11. Equilibrium-count regimes over an arrival-rate sweep, via the CLI.
Outcome criterion_11() {
  Outcome out;
  const auto text = run_cli("equilibrium --N 20 --lambda 0.5:6.0:12 --cost poly:1:2");
  if (!text) {
    out.fail("could not run the CLI (STRATQ_BIN unset or tool failed)");
    return out;
  }
  const auto rows = parse_csv(*text);
  if (rows.size() < 2) {
    out.fail("empty sweep output");
    return out;
  }
  const int li = col_index(rows[0], "lambda");
  const int ci = col_index(rows[0], "n_equilibria");
  const int ei = col_index(rows[0], "eq_index");
  const int mi = col_index(rows[0], "mu_star");
  if (li < 0 || ci < 0 || ei < 0 || mi < 0) {
    out.fail("sweep output is missing expected columns");
    return out;
  }

  std::vector<double> grid;
  for (int k = 0; k < 12; ++k) grid.push_back(0.5 + 0.5 * k);
  bool saw_na = false;
  for (double lambda : grid) {
    int rows_here = 0, count = -1;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      if (std::abs(std::stod(rows[r][li]) - lambda) > 1e-9) continue;
      ++rows_here;
      count = std::stoi(rows[r][ci]);
      if (count == 0) {
        if (rows[r][ei] != "NA" || rows[r][mi] != "NA") {
          out.fail("empty point at lambda " + fmt(lambda, 3) + " is not an explicit NA row");
        }
        saw_na = true;
      }
    }
    const int expect = lambda <= 3.01 ? 1 : (lambda <= 4.51 ? 2 : 0);
    const int expect_rows = expect == 0 ? 1 : expect;
    if (count != expect || rows_here != expect_rows) {
      out.fail("lambda " + fmt(lambda, 3) + ": " + std::to_string(count) +
               " equilibria in " + std::to_string(rows_here) + " rows, expected " +
               std::to_string(expect));
    }
  }
  if (!saw_na) out.fail("no explicit NA rows were emitted");
  if (out.pass) out.note("counts 1/2/0 across small, intermediate, large arrival rates");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::function<Outcome()> criteria[] = {
      criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5, criterion_6,
      criterion_7, criterion_8, criterion_9, criterion_10, criterion_11};
  const int total = static_cast<int>(std::size(criteria));

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
      if (only < 1 || only > total) {
        std::fprintf(stderr, "criterion index must be 1..%d\n", total);
        return 64;
      }
    }
  }

  int failures = 0;
  for (int k = 1; k <= total; ++k) {
    if (only && k != only) continue;
    Outcome out;
    try {
      out = criteria[k - 1]();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    std::string detail;
    for (std::size_t i = 0; i < out.notes.size(); ++i) {
      detail += (i ? "; " : "") + out.notes[i];
    }
    std::printf("%s criterion %d: %s\n", out.pass ? "PASS" : "FAIL", k, detail.c_str());
    if (!out.pass) ++failures;
  }
  return failures;
}
