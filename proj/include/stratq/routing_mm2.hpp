#pragma once

#include <optional>
#include <utility>

#include "stratq/cost.hpp"

namespace stratq {

// Two heterogeneous exponential servers fed by one Poisson stream.  A job
// arriving to an empty system goes to server 1 with probability p; when
// exactly one server is idle it takes the job.  The rate-based variant
// derives p from the posted rates as mu1^r / (mu1^r + mu2^r).
struct Mm2Profile {
  enum class Policy { probability, exponent };

  double lambda = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  Policy kind = Policy::probability;
  double value = 0.0;  // p for probability, r for exponent

  static Mm2Profile with_p(double lambda, double mu1, double mu2, double p);
  static Mm2Profile with_r(double lambda, double mu1, double mu2, double r);
};

// Probabilities of the three low-occupancy states: empty system, one job at
// server 1, one job at server 2.  Levels >= 2 continue geometrically with
// ratio lambda/(mu1+mu2).
struct Mm2LowStates {
  double pi0 = 0.0;
  double pi1_1 = 0.0;
  double pi1_2 = 0.0;
};

// Certified window for symmetric rate-exponent equilibria: mu_dagger solves
// mu^2 c'(mu) = lambda/2, mu_bar makes the symmetric utility equal to its
// value at the lowest admissible rate lambda/2, and r_lower = phi(mu_bar).
// No exponent below r_lower admits a symmetric equilibrium.
struct Mm2EquilibriumBounds {
  double mu_dagger = 0.0;
  double mu_bar = 0.0;
  double r_lower = 0.0;
};

Mm2LowStates mm2_steady_state(const Mm2Profile& profile);

// Idle probability of each server under the rate-based policy; the second
// component is the first with the server roles swapped.
std::pair<double, double> idle_r(const Mm2Profile& profile);

// Empty-system bias toward server 1 induced by exponent r.
double rate_bias(double mu1, double mu2, double r);

// Maps a candidate symmetric rate to the unique exponent r for which it is
// stationary: phi(mu) = 4(lambda+mu)(mu(lambda+2mu)c'(mu) - lambda) /
// (lambda(lambda-2mu)).  Strictly decreasing on (lambda/2, inf) whenever
// c'(lambda/2) < 1/lambda.
double phi(double mu, double lambda, const CostFunction& cf);

Mm2EquilibriumBounds equilibrium_bounds(double lambda, const CostFunction& cf);

// Inverts phi and confirms the candidate is a global best response by a
// dense utility scan; absence (r below the bound, or scan refutation) is a
// value, not an error.
std::optional<double> equilibrium_for_r(double r, double lambda,
                                        const CostFunction& cf);

// d(idle_1)/d(mu1) at the symmetric point mu1 = mu2 = mu under exponent r.
double symmetric_foc_derivative(double mu, double lambda, double r);

// Idle-time jump a server gains when the empty-system arrivals switch from
// all-to-it to all-to-its-peer at equal rates: lambda(2mu-lambda) /
// ((mu+lambda)(2mu+lambda)).  Strictly positive on the stable range, which
// is what rules out symmetric equilibria under the fastest-server-first and
// slowest-server-first tie-breaking extremes.
double fsf_ssf_gap(double mu, double lambda);

// Mean sojourn time at a symmetric two-server operating point.
double mean_response(double mu_star, double lambda);

}  // namespace stratq
