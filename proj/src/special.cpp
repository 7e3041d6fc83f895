#include "stratq/special.hpp"

#include <cmath>
#include <stdexcept>

#include "stratq/numerics.hpp"

namespace stratq {

double erlang_c(int N, double rho) {
  if (N < 1) throw std::invalid_argument("erlang_c: N must be >= 1");
  if (!(rho >= 0.0) || !(rho < static_cast<double>(N)))
    throw std::domain_error("erlang_c: need 0 <= rho < N (stable system)");
  double B = 1.0;
  for (int k = 1; k <= N; ++k) B = rho * B / (static_cast<double>(k) + rho * B);
  return B / (1.0 - (rho / static_cast<double>(N)) * (1.0 - B));
}

std::pair<double, double> normal_pdf_cdf(double x) {
  constexpr double inv_sqrt_2pi = 0.3989422804014327;
  constexpr double inv_sqrt_2 = 0.7071067811865476;
  const double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
  const double cdf = 0.5 * std::erfc(-x * inv_sqrt_2);
  return {pdf, cdf};
}

double alpha(double y) {
  if (!(y > 0.0)) throw std::domain_error("alpha: y must be > 0");
  const auto [pdf, cdf] = normal_pdf_cdf(y);
  if (pdf == 0.0) return 0.0;
  return 1.0 / (1.0 + y * cdf / pdf);
}

BmrConstants y_star(const EconomicParams& econ) {
  const auto g = [&econ](double y) { return econ.c_S * y + econ.w * alpha(y) / y; };
  const double lo = 1e-6, hi = 10.0;
  // The minimum must be interior: g decreasing at lo (alpha/y divergence)
  // and increasing at hi (linear term dominates).
  const double h = 1e-7;
  if (!(g(lo + h) - g(lo) < 0.0))
    throw std::logic_error("y_star: objective not decreasing at bracket start");
  if (!(g(hi) - g(hi - h) > 0.0))
    throw std::logic_error("y_star: objective not increasing at bracket end");
  const double ys = golden_min(g, lo, hi, 1e-10);
  return {ys, alpha(ys), g(ys)};
}

double mean_wait(const SystemConfig& cfg, double mu) {
  if (!(mu > 0.0) || !(static_cast<double>(cfg.N) * mu > cfg.lambda))
    throw std::domain_error("mean_wait: need N*mu > lambda");
  const double rho = cfg.lambda / mu;
  return (1.0 / cfg.lambda) * (rho / (static_cast<double>(cfg.N) - rho)) * erlang_c(cfg.N, rho);
}

namespace {

// Continued fraction of the regularized incomplete beta function (modified
// Lentz iteration).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_975(int df) {
  if (df < 1) throw std::invalid_argument("student_t_975: df must be >= 1");
  const double nu = df;
  // P(T <= t) = 1 - I_{nu/(nu+t^2)}(nu/2, 1/2) / 2 for t >= 0.
  auto cdf = [nu](double t) {
    return 1.0 - 0.5 * reg_inc_beta(nu / 2.0, 0.5, nu / (nu + t * t));
  };
  auto f = [&cdf](double t) { return cdf(t) - 0.975; };
  double lo = 0.0, hi = 2.0;
  while (f(hi) < 0.0) hi *= 2.0;  // df=1 needs ~12.7
  return bisect_root(f, lo, hi, f(lo), 1e-14);
}

}  // namespace stratq
