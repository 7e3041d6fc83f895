#include "stratq/cost.hpp"

#include <cmath>
#include <stdexcept>

#include "stratq/numerics.hpp"

namespace stratq {

CostFunction poly_cost(double c_E, double p) {
  if (!(c_E >= 0.0)) throw std::invalid_argument("poly_cost: c_E must be >= 0");
  if (!(p >= 1.0)) throw std::invalid_argument("poly_cost: p must be >= 1");
  CostFunction cf;
  cf.family = CostFunction::Family::polynomial;
  cf.c_E = c_E;
  cf.p = p;
  cf.c = [c_E, p](double mu) { return c_E * std::pow(mu, p); };
  cf.c1 = [c_E, p](double mu) { return c_E * p * std::pow(mu, p - 1.0); };
  // Exponent hits zero for p in {1, 2}; std::pow(mu, 0) == 1 handles the
  // boundary, but the leading coefficient must vanish explicitly so that
  // p == 1 yields exactly 0 rather than 0 * pow(mu, -1) at mu -> 0.
  cf.c2 = [c_E, p](double mu) {
    const double k = c_E * p * (p - 1.0);
    return k == 0.0 ? 0.0 : k * std::pow(mu, p - 2.0);
  };
  cf.c3 = [c_E, p](double mu) {
    const double k = c_E * p * (p - 1.0) * (p - 2.0);
    return k == 0.0 ? 0.0 : k * std::pow(mu, p - 3.0);
  };
  return cf;
}

CostFunction normalized_power_cost(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("normalized_power_cost: q must be >= 1");
  CostFunction cf;
  cf.family = CostFunction::Family::normalized_power;
  cf.q = q;
  cf.c = [q](double mu) { return std::pow(mu, q) / q; };
  cf.c1 = [q](double mu) { return std::pow(mu, q - 1.0); };
  cf.c2 = [q](double mu) {
    const double k = q - 1.0;
    return k == 0.0 ? 0.0 : k * std::pow(mu, q - 2.0);
  };
  cf.c3 = [q](double mu) {
    const double k = (q - 1.0) * (q - 2.0);
    return k == 0.0 ? 0.0 : k * std::pow(mu, q - 3.0);
  };
  return cf;
}

std::vector<double> default_cost_grid(double lo, double hi) { return log_grid(lo, hi, 64); }

namespace {

double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-8);
  return std::abs(got - want) / scale;
}

}  // namespace

CostValidation validate_cost(const CostFunction& cf, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("validate_cost: empty grid");
  CostValidation rep;
  for (double mu : grid) {
    if (!(mu > 0.0)) throw std::invalid_argument("validate_cost: grid rates must be > 0");
    if (!(cf.c1(mu) > 0.0)) {
      rep.pass = false;
      rep.violations.push_back("c'(mu) <= 0 at mu=" + std::to_string(mu));
    }
    if (cf.c2(mu) < 0.0) {
      rep.pass = false;
      rep.violations.push_back("c''(mu) < 0 at mu=" + std::to_string(mu));
    }
    if (cf.c3(mu) < 0.0) {
      rep.pass = false;
      rep.violations.push_back("c'''(mu) < 0 at mu=" + std::to_string(mu));
    }
    // Step must keep mu - h strictly positive.
    const double hh = std::min(1e-5 * std::max(1.0, mu), 0.45 * mu);
    rep.max_c1_mismatch =
        std::max(rep.max_c1_mismatch, rel_err(central_diff(cf.c, mu, hh), cf.c1(mu)));
    rep.max_c2_mismatch =
        std::max(rep.max_c2_mismatch, rel_err(central_diff(cf.c1, mu, hh), cf.c2(mu)));
    rep.max_c3_mismatch =
        std::max(rep.max_c3_mismatch, rel_err(central_diff(cf.c2, mu, hh), cf.c3(mu)));
  }
  return rep;
}

}  // namespace stratq
