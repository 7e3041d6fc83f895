#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "stratq/poa.hpp"
#include "stratq/special.hpp"

using namespace stratq;

namespace {
const EconomicParams kUnit{1.0, 1.0};
}

TEST_SUITE("poa") {

TEST_CASE("limiting coefficient at pinned points") {
  // gamma(beta) = beta + alpha(beta)/beta at unit prices.
  CHECK(gamma_cost(1.0, kUnit) == doctest::Approx(1.22336127479826074).epsilon(1e-12));
  const auto bmr = y_star(kUnit);
  CHECK(gamma_cost(bmr.y_star, kUnit) == doctest::Approx(1.1905776108124283).epsilon(1e-12));
}

TEST_CASE("coefficient slope matches finite differences") {
  for (double beta : {0.3, 0.8, 2.0, 5.0}) {
    const double h = 1e-6 * beta;
    const double fd = (gamma_cost(beta + h, kUnit) - gamma_cost(beta - h, kUnit)) / (2 * h);
    CHECK(gamma_cost_prime(beta, kUnit) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("anarchy ratio is one at the safety optimum and above elsewhere") {
  const auto bmr = y_star(kUnit);
  CHECK(f_poa(bmr.y_star, kUnit) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(f_poa(0.5, kUnit) > 1.0);
  CHECK(f_poa(2.0, kUnit) > 1.0);
}

TEST_CASE("effort coefficient for power costs") {
  CHECK(beta_of_mu(4.0, normalized_power_cost(2.0)) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(beta_of_mu(2.25, normalized_power_cost(1.5)) ==
        doctest::Approx(2.25).epsilon(1e-13));  // mu^{q-1/2} = mu at q = 1.5
}

TEST_CASE("pinned scaled-cost minima across the power family") {
  const struct {
    double q, beta, mu, f;
  } table[] = {
      {1.001, 2.9960887568696955, 8.9373123398282498, 2.5169196888876476},
      {1.010, 2.2930050599142704, 5.0895161432989456, 1.9305511224410160},
      {1.100, 1.5432129830129666, 2.0608344893685710, 1.3382377187892721},
  };
  for (const auto& row : table) {
    const auto m = min_poa_for_q(row.q, kUnit);
    CHECK(m.beta_star == doctest::Approx(row.beta).epsilon(1e-5));
    CHECK(m.mu_star == doctest::Approx(row.mu).epsilon(1e-5));
    CHECK(m.f_poa == doctest::Approx(row.f).epsilon(1e-7));
    CHECK(m.beta_star > y_star(kUnit).y_star);
    // Stationarity of the scaled cost along the effort curve.
    CHECK(std::abs(foc_c2_residual(m.beta_star, m.mu_star, normalized_power_cost(row.q),
                                   kUnit)) < 1e-6);
  }
}

TEST_CASE("minimum agrees with a dense scan for a quadratic effort cost") {
  const auto cf = poly_cost(1.0, 2.0);
  const auto m = min_poa(cf, kUnit);

  double best = 1e300;
  double best_mu = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    const double mu = 1e-3 + (10.0 - 1e-3) * i / 20000.0;
    const double v = gamma_cost(beta_of_mu(mu, cf), kUnit) / std::sqrt(mu);
    if (v < best) {
      best = v;
      best_mu = mu;
    }
  }
  CHECK(m.mu_star == doctest::Approx(best_mu).epsilon(5e-3));
  CHECK(gamma_cost(m.beta_star, kUnit) / std::sqrt(m.mu_star) <= best + 1e-9);
}

TEST_CASE("anarchy curve carries its own minimum") {
  const auto cf = normalized_power_cost(1.05);
  const auto curve = poa_curve(cf, kUnit, 0.1, 30.0, 200);
  REQUIRE(curve.mu.size() == 200);
  REQUIRE(curve.beta.size() == 200);
  for (std::size_t i = 0; i < curve.mu.size(); ++i) {
    CHECK(curve.beta[i] == doctest::Approx(beta_of_mu(curve.mu[i], cf)).epsilon(1e-12));
    CHECK(curve.f_poa_val[i] >= 1.0);
    CHECK(curve.gamma_val[i] ==
          doctest::Approx(gamma_cost(curve.beta[i], kUnit)).epsilon(1e-12));
  }
  const auto m = min_poa(cf, kUnit);
  CHECK(curve.minimum.f_poa == doctest::Approx(m.f_poa).epsilon(1e-10));
}

TEST_CASE("guards") {
  CHECK_THROWS_AS(gamma_cost(0.0, kUnit), std::domain_error);
  CHECK_THROWS_AS(min_poa_for_q(1.0, kUnit), std::domain_error);
  CHECK_THROWS_AS(min_poa_for_q(0.5, kUnit), std::domain_error);
}

}  // TEST_SUITE
