#include "stratq/ctmc.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace stratq {

namespace {

constexpr int kMaxServers = 8;

void check_inputs(const std::vector<double>& rates, double lambda) {
  if (rates.empty() || static_cast<int>(rates.size()) > kMaxServers) {
    throw std::invalid_argument("ctmc: need between 1 and 8 service rates");
  }
  for (double r : rates) {
    if (!(r > 0.0)) throw std::invalid_argument("ctmc: service rates must be positive");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("ctmc: arrival rate must be positive");
  double total = std::accumulate(rates.begin(), rates.end(), 0.0);
  if (!(lambda < total)) {
    throw std::domain_error("ctmc: arrival rate must be below total service rate");
  }
}

void extend(std::vector<std::vector<int>>& out, std::vector<int>& cur,
            std::vector<bool>& used, int N) {
  for (int i = 0; i < N; ++i) {
    if (used[i]) continue;
    used[i] = true;
    cur.push_back(i);
    out.push_back(cur);
    extend(out, cur, used, N);
    cur.pop_back();
    used[i] = false;
  }
}

// Queue truncation level: smallest K with tail_ratio^K below 1e-12, so the
// dropped mass sits well under every comparison tolerance used on top.
int truncation_level(double ratio) {
  int K = 1;
  double p = ratio;
  while (p >= 1e-12 && K < 100000) {
    p *= ratio;
    ++K;
  }
  return K;
}

std::vector<double> uniform_weights(std::size_t k) {
  return std::vector<double>(k, 1.0 / static_cast<double>(k));
}

struct Chain {
  std::vector<std::vector<int>> states;  // states[0] is the empty idle list
  int P = 0;                             // ordered-idle-list count
  int K = 0;                             // queue truncation level
  int M = 0;                             // P + K unknowns
  Eigen::SparseMatrix<double> A;         // transposed generator Q^T
  int queue_index(int m) const { return m == 0 ? 0 : P + m - 1; }
};

Chain build_chain(const std::vector<double>& rates, double lambda,
                  const std::function<std::vector<double>(const std::vector<int>&)>& router) {
  check_inputs(rates, lambda);
  const int N = static_cast<int>(rates.size());
  const double total = std::accumulate(rates.begin(), rates.end(), 0.0);

  Chain ch;
  ch.states = enumerate_idle_states(N);
  ch.P = static_cast<int>(ch.states.size());
  ch.K = truncation_level(lambda / total);
  ch.M = ch.P + ch.K;

  std::map<std::vector<int>, int> index;
  for (int i = 0; i < ch.P; ++i) index.emplace(ch.states[i], i);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(ch.M) * (N + 2));
  // Row r, column c of Q^T holds rate(c -> r); the diagonal carries the
  // negated total outflow of the column state.
  auto add = [&](int from, int to, double rate) {
    trips.emplace_back(to, from, rate);
    trips.emplace_back(from, from, -rate);
  };

  for (int s = 1; s < ch.P; ++s) {
    const auto& idle = ch.states[s];
    const int k = static_cast<int>(idle.size());
    // Arrival: the router picks one idle server, which leaves the list.
    auto w = router(idle);
    if (static_cast<int>(w.size()) != k) {
      throw std::invalid_argument("ctmc: router returned wrong weight count");
    }
    double wsum = 0.0;
    for (double x : w) {
      if (!(x >= 0.0)) throw std::invalid_argument("ctmc: negative routing weight");
      wsum += x;
    }
    if (std::fabs(wsum - 1.0) > 1e-9) {
      throw std::invalid_argument("ctmc: routing weights must sum to 1");
    }
    for (int j = 0; j < k; ++j) {
      if (w[j] == 0.0) continue;
      std::vector<int> next = idle;
      next.erase(next.begin() + j);
      add(s, index.at(next), lambda * w[j]);
    }
    // Departure: a busy server frees up and joins the tail of the idle list.
    std::vector<bool> is_idle(N, false);
    for (int i : idle) is_idle[i] = true;
    for (int b = 0; b < N; ++b) {
      if (is_idle[b]) continue;
      std::vector<int> next = idle;
      next.push_back(b);
      add(s, index.at(next), rates[b]);
    }
  }
  // All-busy block: a departure at queue level 0 hands the freed server to
  // the idle list; at levels >= 1 it pulls the head of the queue instead.
  add(ch.queue_index(0), ch.queue_index(1), lambda);
  for (int b = 0; b < N; ++b) {
    add(ch.queue_index(0), index.at(std::vector<int>{b}), rates[b]);
  }
  for (int m = 1; m <= ch.K; ++m) {
    add(ch.queue_index(m), ch.queue_index(m - 1), total);
    if (m < ch.K) add(ch.queue_index(m), ch.queue_index(m + 1), lambda);
    // Arrivals at level K are dropped by the truncation.
  }

  ch.A.resize(ch.M, ch.M);
  ch.A.setFromTriplets(trips.begin(), trips.end());
  return ch;
}

SteadyState solve_chain(
    const std::vector<double>& rates, double lambda,
    const std::function<std::vector<double>(const std::vector<int>&)>& router) {
  Chain ch = build_chain(rates, lambda, router);
  const double total = std::accumulate(rates.begin(), rates.end(), 0.0);

  // Replace the last balance equation with the normalization row; the
  // dropped equation is implied by the others.
  std::vector<Eigen::Triplet<double>> kept;
  kept.reserve(static_cast<std::size_t>(ch.A.nonZeros()) + ch.M);
  for (int c = 0; c < ch.A.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(ch.A, c); it; ++it) {
      if (it.row() != ch.M - 1) kept.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int c = 0; c < ch.M; ++c) kept.emplace_back(ch.M - 1, c, 1.0);
  Eigen::SparseMatrix<double> A(ch.M, ch.M);
  A.setFromTriplets(kept.begin(), kept.end());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(ch.M);
  b[ch.M - 1] = 1.0;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> solver;
  solver.analyzePattern(A);
  solver.factorize(A);
  if (solver.info() != Eigen::Success) {
    throw std::logic_error("ctmc: balance equations are singular after normalization");
  }
  Eigen::VectorXd pi = solver.solve(b);
  if (solver.info() != Eigen::Success) {
    throw std::logic_error("ctmc: balance solve failed");
  }

  SteadyState ss;
  ss.states = ch.states;
  ss.probs.resize(ch.P);
  for (int s = 0; s < ch.P; ++s) ss.probs[s] = pi[s];
  ss.pi_B = pi[ch.queue_index(0)];
  ss.tail_ratio = lambda / total;
  for (int m = 1; m <= ch.K; ++m) {
    ss.tail_mass += pi[ch.queue_index(m)];
    ss.mean_queue_len += m * pi[ch.queue_index(m)];
  }
  ss.mean_wait = ss.mean_queue_len / lambda;
  ss.idle_fraction.assign(rates.size(), 0.0);
  for (int s = 0; s < ch.P; ++s) {
    for (int i : ch.states[s]) ss.idle_fraction[i] += pi[s];
  }
  return ss;
}

}  // namespace

std::vector<std::vector<int>> enumerate_idle_states(int N) {
  std::vector<std::vector<int>> out;
  out.push_back({});
  std::vector<int> cur;
  std::vector<bool> used(N, false);
  extend(out, cur, used, N);
  return out;
}

IdleOrderPolicy random_policy() {
  return {"random", [](std::size_t k) { return uniform_weights(k); }};
}

IdleOrderPolicy lisf_policy() {
  return {"lisf", [](std::size_t k) {
            std::vector<double> w(k, 0.0);
            w.front() = 1.0;
            return w;
          }};
}

IdleOrderPolicy sisf_policy() {
  return {"sisf", [](std::size_t k) {
            std::vector<double> w(k, 0.0);
            w.back() = 1.0;
            return w;
          }};
}

IdleOrderPolicy weighted_random_policy() {
  return {"weighted_random", [](std::size_t k) {
            std::vector<double> w(k);
            double total = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
              w[j] = static_cast<double>(k - j);
              total += w[j];
            }
            for (double& x : w) x /= total;
            return w;
          }};
}

SteadyState product_form(const std::vector<double>& rates, double lambda) {
  check_inputs(rates, lambda);
  const double total = std::accumulate(rates.begin(), rates.end(), 0.0);
  const double r = lambda / total;

  auto states = enumerate_idle_states(static_cast<int>(rates.size()));
  const int P = static_cast<int>(states.size());

  // Unnormalized weights: the empty list has weight 1 and each idle server
  // in the list contributes a factor mu_i / lambda.  The busy block beyond
  // the empty list is geometric with ratio r, summed in closed form.
  std::vector<double> weight(P, 1.0);
  double T = 0.0;
  for (int s = 0; s < P; ++s) {
    for (int i : states[s]) weight[s] *= rates[i] / lambda;
    T += weight[s];
  }
  const double pi_B = 1.0 / (T - 1.0 + 1.0 / (1.0 - r));

  SteadyState ss;
  ss.states = states;
  ss.probs.resize(P);
  for (int s = 0; s < P; ++s) ss.probs[s] = pi_B * weight[s];
  ss.pi_B = pi_B;
  ss.tail_ratio = r;
  ss.tail_mass = pi_B * r / (1.0 - r);
  ss.mean_queue_len = pi_B * r / ((1.0 - r) * (1.0 - r));
  ss.mean_wait = ss.mean_queue_len / lambda;
  ss.idle_fraction.assign(rates.size(), 0.0);
  for (int s = 0; s < P; ++s) {
    for (int i : states[s]) ss.idle_fraction[i] += ss.probs[s];
  }
  return ss;
}

SteadyState generator_solve(const std::vector<double>& rates, double lambda,
                            const IdleOrderPolicy& policy) {
  auto weights = policy.position_weights;
  if (!weights) throw std::invalid_argument("ctmc: policy has no weight function");
  return solve_chain(rates, lambda, [&weights](const std::vector<int>& idle) {
    return weights(idle.size());
  });
}

SteadyState generator_solve_custom(
    const std::vector<double>& rates, double lambda,
    const std::function<std::vector<double>(const std::vector<int>&)>& router) {
  if (!router) throw std::invalid_argument("ctmc: missing router");
  return solve_chain(rates, lambda, router);
}

double balance_residual(const std::vector<double>& rates, double lambda,
                        const IdleOrderPolicy& policy, const SteadyState& ss) {
  auto weights = policy.position_weights;
  if (!weights) throw std::invalid_argument("ctmc: policy has no weight function");
  Chain ch = build_chain(rates, lambda, [&weights](const std::vector<int>& idle) {
    return weights(idle.size());
  });
  if (static_cast<int>(ss.probs.size()) != ch.P) {
    throw std::invalid_argument("ctmc: steady state does not match this instance");
  }
  Eigen::VectorXd pi(ch.M);
  for (int s = 0; s < ch.P; ++s) pi[s] = ss.probs[s];
  double level = ss.pi_B;
  for (int m = 1; m <= ch.K; ++m) {
    level *= ss.tail_ratio;
    pi[ch.queue_index(m)] = level;
  }
  // The geometric tail satisfies the truncated chain's balance equations
  // exactly (level K loses only its outgoing arrival), so every row counts.
  Eigen::VectorXd res = ch.A * pi;
  return res.cwiseAbs().maxCoeff();
}

double collapse_check(const std::vector<double>& rates, double lambda,
                      const std::vector<IdleOrderPolicy>& policies) {
  auto ref = product_form(rates, lambda);
  double worst = 0.0;
  for (const auto& pol : policies) {
    auto got = generator_solve(rates, lambda, pol);
    for (std::size_t s = 0; s < ref.probs.size(); ++s) {
      worst = std::max(worst, std::fabs(got.probs[s] - ref.probs[s]));
    }
    for (std::size_t i = 0; i < rates.size(); ++i) {
      worst = std::max(worst, std::fabs(got.idle_fraction[i] - ref.idle_fraction[i]));
    }
    worst = std::max(worst, std::fabs(got.tail_mass - ref.tail_mass));
  }
  return worst;
}

double idle_fraction_of(const SteadyState& ss, int server) {
  if (server < 0 || server >= static_cast<int>(ss.idle_fraction.size())) {
    throw std::invalid_argument("ctmc: server index out of range");
  }
  return ss.idle_fraction[static_cast<std::size_t>(server)];
}

}  // namespace stratq
