#include "stratq/routing_mm2.hpp"

#include <cmath>
#include <stdexcept>

#include "stratq/numerics.hpp"
#include "stratq/special.hpp"

namespace stratq {

namespace {

void check_profile(double lambda, double mu1, double mu2) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) {
    throw std::invalid_argument("mm2: service rates must be positive");
  }
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("mm2: arrival rate must be nonnegative");
  }
  if (!(mu1 + mu2 > lambda)) {
    throw std::domain_error("mm2: total service rate must exceed the arrival rate");
  }
}

double pi0_denominator(double lambda, double mu1, double mu2, double p) {
  const double s = mu1 + mu2;
  return mu1 * mu2 * s * s +
         lambda * s * (mu2 * mu2 + 2.0 * mu1 * mu2 + (1.0 - p) * (mu1 * mu1 - mu2 * mu2)) +
         lambda * lambda * (mu1 * mu1 + mu2 * mu2);
}

// P(server 1 idle) = pi0 + pi1(2), collapsed over the common denominator.
double idle1_closed(double lambda, double mu1, double mu2, double p) {
  const double s = mu1 + mu2;
  const double num = mu1 * (s - lambda) *
                     ((lambda + mu2) * (lambda + mu2) + mu1 * mu2 + (1.0 - p) * lambda * s);
  return num / pi0_denominator(lambda, mu1, mu2, p);
}

void check_validity(double lambda, const CostFunction& cf) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("mm2: arrival rate must be positive");
  }
  if (!(cf.c1(lambda / 2.0) < 1.0 / lambda)) {
    throw std::invalid_argument(
        "mm2: requires c'(lambda/2) < 1/lambda; the marginal cost at the "
        "lowest stable symmetric rate is too steep");
  }
}

}  // namespace

Mm2Profile Mm2Profile::with_p(double lambda, double mu1, double mu2, double p) {
  check_profile(lambda, mu1, mu2);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("mm2: empty-system bias p must lie in [0,1]");
  }
  return {lambda, mu1, mu2, Policy::probability, p};
}

Mm2Profile Mm2Profile::with_r(double lambda, double mu1, double mu2, double r) {
  check_profile(lambda, mu1, mu2);
  if (!std::isfinite(r)) {
    throw std::invalid_argument("mm2: rate exponent must be finite");
  }
  return {lambda, mu1, mu2, Policy::exponent, r};
}

Mm2LowStates mm2_steady_state(const Mm2Profile& profile) {
  if (profile.kind != Mm2Profile::Policy::probability) {
    throw std::invalid_argument("mm2_steady_state: needs a probability policy");
  }
  check_profile(profile.lambda, profile.mu1, profile.mu2);
  const double lambda = profile.lambda;
  const double mu1 = profile.mu1;
  const double mu2 = profile.mu2;
  const double p = profile.value;
  const double s = mu1 + mu2;

  Mm2LowStates out;
  out.pi0 = mu1 * mu2 * (s - lambda) * (s + 2.0 * lambda) /
            pi0_denominator(lambda, mu1, mu2, p);
  out.pi1_1 = lambda * (lambda + p * s) * out.pi0 / (mu1 * (s + 2.0 * lambda));
  out.pi1_2 = lambda * (lambda + (1.0 - p) * s) * out.pi0 / (mu2 * (s + 2.0 * lambda));
  return out;
}

double rate_bias(double mu1, double mu2, double r) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) {
    throw std::invalid_argument("mm2: service rates must be positive");
  }
  // 1 / (1 + (mu2/mu1)^r), written so equal rates give exactly 1/2 and
  // extreme exponents saturate instead of overflowing.
  return 1.0 / (1.0 + std::exp(r * (std::log(mu2) - std::log(mu1))));
}

std::pair<double, double> idle_r(const Mm2Profile& profile) {
  if (profile.kind != Mm2Profile::Policy::exponent) {
    throw std::invalid_argument("idle_r: needs a rate-exponent policy");
  }
  check_profile(profile.lambda, profile.mu1, profile.mu2);
  const double p = rate_bias(profile.mu1, profile.mu2, profile.value);
  const double i1 = idle1_closed(profile.lambda, profile.mu1, profile.mu2, p);
  const double i2 = idle1_closed(profile.lambda, profile.mu2, profile.mu1, 1.0 - p);
  return {i1, i2};
}

double phi(double mu, double lambda, const CostFunction& cf) {
  check_validity(lambda, cf);
  if (!(mu > lambda / 2.0)) {
    throw std::domain_error("phi: rate must exceed lambda/2");
  }
  return 4.0 * (lambda + mu) * (mu * (lambda + 2.0 * mu) * cf.c1(mu) - lambda) /
         (lambda * (lambda - 2.0 * mu));
}

Mm2EquilibriumBounds equilibrium_bounds(double lambda, const CostFunction& cf) {
  check_validity(lambda, cf);

  // mu_dagger: mu^2 c'(mu) = lambda/2.  The validity condition puts the
  // left side below lambda/2 at mu = lambda/2, so bracket upward.
  auto f_dagger = [&](double mu) { return mu * mu * cf.c1(mu) - lambda / 2.0; };
  double lo = lambda / 2.0;
  const double flo = f_dagger(lo);
  double hi = std::max(lambda, 1.0);
  int guard = 0;
  while (f_dagger(hi) <= 0.0) {
    hi *= 2.0;
    if (++guard > 200) {
      throw std::domain_error("mm2: marginal cost too flat, no finite mu_dagger");
    }
  }
  Mm2EquilibriumBounds out;
  out.mu_dagger = bisect_root(f_dagger, lo, hi, flo);

  // mu_bar: symmetric utility returns to its value at the stability edge,
  // 1 - lambda/(2 mu) - c(mu) + c(lambda/2) = 0, beyond mu_dagger.
  auto g = [&](double mu) {
    return 1.0 - lambda / (2.0 * mu) - cf.c(mu) + cf.c(lambda / 2.0);
  };
  const double g_dagger = g(out.mu_dagger);
  if (!(g_dagger > 0.0)) {
    throw std::logic_error("mm2: utility at mu_dagger should exceed the edge value");
  }
  hi = out.mu_dagger;
  guard = 0;
  do {
    hi *= 2.0;
    if (++guard > 200) {
      throw std::domain_error("mm2: cost never overtakes idle gains, no finite mu_bar");
    }
  } while (g(hi) >= 0.0);
  out.mu_bar = bisect_root(g, out.mu_dagger, hi, g_dagger);
  out.r_lower = phi(out.mu_bar, lambda, cf);
  return out;
}

double symmetric_foc_derivative(double mu, double lambda, double r) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("mm2: arrival rate must be positive");
  }
  if (!(mu > lambda / 2.0)) {
    throw std::domain_error("mm2: rate must exceed lambda/2");
  }
  return lambda * (4.0 * lambda + 4.0 * mu + lambda * r - 2.0 * mu * r) /
         (4.0 * mu * (lambda + mu) * (lambda + 2.0 * mu));
}

std::optional<double> equilibrium_for_r(double r, double lambda,
                                        const CostFunction& cf) {
  const Mm2EquilibriumBounds b = equilibrium_bounds(lambda, cf);
  if (r < b.r_lower) return std::nullopt;

  // phi decreases from +inf at the stability edge, so phi(mu)-r brackets a
  // sign change on (lambda/2, mu_bar+1] once the lower end is close enough.
  const double edge = lambda / 2.0;
  const double hi = b.mu_bar + 1.0;
  auto f = [&](double mu) { return phi(mu, lambda, cf) - r; };
  double lo = edge * (1.0 + 1e-9);
  int guard = 0;
  while (!(f(lo) > 0.0)) {
    lo = edge + (lo - edge) / 16.0;
    if (lo <= edge || ++guard > 60) return std::nullopt;
  }
  if (!(f(hi) < 0.0)) return std::nullopt;
  const double mu_star = bisect_root(f, lo, hi, f(lo));

  // Global best-response confirmation: no unilateral rate on the candidate
  // window may beat the candidate's own utility.
  const double own = idle1_closed(lambda, mu_star, mu_star,
                                  rate_bias(mu_star, mu_star, r)) -
                     cf.c(mu_star);
  constexpr int kGrid = 10000;
  double best = own;
  for (int i = 1; i <= kGrid; ++i) {
    const double mu1 = edge + (hi - edge) * static_cast<double>(i) / kGrid;
    const double u = idle1_closed(lambda, mu1, mu_star, rate_bias(mu1, mu_star, r)) -
                     cf.c(mu1);
    best = std::max(best, u);
  }
  if (best > own + 1e-9) return std::nullopt;
  return mu_star;
}

double fsf_ssf_gap(double mu, double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("mm2: arrival rate must be positive");
  }
  if (!(mu > lambda / 2.0)) {
    throw std::domain_error("mm2: rate must exceed lambda/2");
  }
  const double gap = idle1_closed(lambda, mu, mu, 0.0) - idle1_closed(lambda, mu, mu, 1.0);
  const double closed = lambda * (2.0 * mu - lambda) /
                        ((mu + lambda) * (2.0 * mu + lambda));
  if (std::fabs(gap - closed) > 1e-12 * std::max(1.0, std::fabs(closed))) {
    throw std::logic_error("fsf_ssf_gap: steady-state difference drifted from the closed form");
  }
  return gap;
}

double mean_response(double mu_star, double lambda) {
  if (!(mu_star > 0.0) || !(lambda > 0.0)) {
    throw std::invalid_argument("mm2: rates must be positive");
  }
  if (!(2.0 * mu_star > lambda)) {
    throw std::domain_error("mm2: symmetric point is unstable");
  }
  return mean_wait(SystemConfig(lambda, 2), mu_star) + 1.0 / mu_star;
}

}  // namespace stratq
