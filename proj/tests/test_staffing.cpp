#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "stratq/staffing.hpp"

using namespace stratq;

TEST_SUITE("staffing") {

TEST_CASE("limiting stationarity roots bracket and satisfy the balance") {
  const auto cf = poly_cost(1.0, 2.0);
  const double a = 0.2;  // below the existence edge
  const auto out = limiting_foc_roots(a, cf);
  REQUIRE(out.roots.size() == 2);
  CHECK(!out.tangency);
  for (double mu : out.roots) {
    CHECK(mu > a);
    CHECK(a * (mu - a) == doctest::Approx(mu * mu * mu * cf.c1(mu)).epsilon(1e-10));
  }
  CHECK(out.roots[0] < out.roots[1]);
}

TEST_CASE("no limiting roots beyond the existence edge") {
  const auto cf = poly_cost(1.0, 2.0);
  const double edge = a_star_closed_form(1.0, 2.0);
  CHECK(limiting_foc_roots(edge * (1.0 + 1e-6), cf).roots.empty());
  const auto close = limiting_foc_roots(edge * (1.0 - 1e-6), cf);
  CHECK(close.roots.size() >= 1);
  for (double mu : close.roots) {
    CHECK(mu == doctest::Approx(std::sqrt(3.0 / 32.0)).epsilon(1e-2));
  }
}

TEST_CASE("closed-form existence edges for polynomial costs") {
  CHECK(a_star_closed_form(1.0, 1.0) == doctest::Approx(4.0 / 27.0).epsilon(1e-15));
  CHECK(a_star_closed_form(1.0, 2.0) ==
        doctest::Approx(0.22963966338592295).epsilon(1e-14));
}

TEST_CASE("numeric edge matches the closed form") {
  CHECK(a_star(poly_cost(1.0, 1.0)) == doctest::Approx(4.0 / 27.0).epsilon(1e-10));
  CHECK(a_star(poly_cost(1.0, 2.0)) ==
        doctest::Approx(a_star_closed_form(1.0, 2.0)).epsilon(1e-10));
  CHECK(a_star(poly_cost(0.5, 3.0)) ==
        doctest::Approx(a_star_closed_form(0.5, 3.0)).epsilon(1e-9));
}

TEST_CASE("load-independent staffing at pinned arrival rates") {
  const auto cf = poly_cost(1.0, 2.0);
  CHECK(staff_ao(50.0, cf) == 218);
  CHECK(staff_ao(100.0, cf) == 436);
  CHECK(staff_ao(200.0, cf) == 871);
  CHECK(staff_ao(400.0, cf) == 1742);
}

TEST_CASE("integer quotients do not round up a whole server") {
  const auto cf = poly_cost(1.0, 2.0);
  CHECK(staff_ao(7.0 * a_star_closed_form(1.0, 2.0), cf) == 7);
}

TEST_CASE("staffing cost decomposes into servers plus waiting") {
  const auto cf = poly_cost(1.0, 2.0);
  const EconomicParams econ(1.0, 1.0);
  const auto res = cost_of(436, 100.0, cf, econ);
  REQUIRE(res.feasible);
  CHECK(res.cost ==
        doctest::Approx(436.0 + 100.0 * res.mean_wait).epsilon(1e-12));
  CHECK(res.mu_star > 100.0 / 436.0);
  CHECK(res.mu_star <= 10.0);
  CHECK_THROWS_AS(cost_of(1, 1.0, cf, econ), std::invalid_argument);
}

TEST_CASE("parallel and serial searches return identical results") {
  const auto cf = poly_cost(1.0, 2.0);
  const EconomicParams econ(1.0, 1.0);
  for (double lambda : {5.0, 30.0}) {
    const auto par = n_opt_search(lambda, cf, econ);
    const auto ser = n_opt_search_serial(lambda, cf, econ);
    CHECK(par.N == ser.N);
    CHECK(par.feasible == ser.feasible);
    CHECK(par.mu_star == ser.mu_star);  // bitwise: same evaluations, same fold
    CHECK(par.cost == ser.cost);
  }
}

TEST_CASE("the pruned search finds the exhaustive minimum") {
  const auto cf = poly_cost(1.0, 2.0);
  const EconomicParams econ(1.0, 1.0);
  const double lambda = 30.0;
  const auto found = n_opt_search(lambda, cf, econ);
  REQUIRE(found.feasible);

  const int n_max = static_cast<int>(std::ceil(3.0 * lambda / a_star(cf))) + 10;
  double best = std::numeric_limits<double>::infinity();
  int best_n = 0;
  for (int n = 2; n <= n_max; ++n) {
    const auto r = cost_of(n, lambda, cf, econ);
    if (r.feasible && r.cost < best) {
      best = r.cost;
      best_n = n;
    }
  }
  CHECK(found.N == best_n);
  CHECK(found.cost == best);
}

TEST_CASE("optimal staffing never loses to the load-independent rule") {
  const auto cf = poly_cost(1.0, 2.0);
  const EconomicParams econ(1.0, 1.0);
  for (double lambda : {20.0, 50.0}) {
    const auto opt = n_opt_search(lambda, cf, econ);
    const auto ao = cost_of(staff_ao(lambda, cf), lambda, cf, econ);
    REQUIRE(opt.feasible);
    REQUIRE(ao.feasible);
    CHECK(opt.cost <= ao.cost);
  }
}

TEST_CASE("tiny systems still staff feasibly") {
  const auto res = n_opt_search(0.05, poly_cost(1.0, 2.0), EconomicParams(1.0, 1.0));
  CHECK(res.feasible);
  CHECK(res.N >= 2);
  CHECK(res.cost < std::numeric_limits<double>::infinity());
}

TEST_CASE("square-root staffing pins to the safety coefficient") {
  CHECK(bmr_staffing(100.0, 1.0, EconomicParams(1.0, 1.0)) ==
        doctest::Approx(108.419909094974484).epsilon(1e-8));
  CHECK_THROWS_AS(bmr_staffing(-1.0, 1.0, EconomicParams(1.0, 1.0)),
                  std::invalid_argument);
}

}  // TEST_SUITE
