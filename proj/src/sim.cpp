#include "stratq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "stratq/parallel.hpp"
#include "stratq/special.hpp"

namespace stratq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // (0, 1): safe under log().
  double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential(double rate) { return -std::log(uniform_open()) / rate; }
};

struct Job {
  double arrival;
  double u;  // service-time uniform, drawn at arrival so policies share it
};

struct RepStats {
  std::vector<double> idle_fraction;
  double mean_wait = 0.0;
  double mean_queue = 0.0;
  long long served = 0;
};

void check_config(const SimConfig& cfg) {
  if (cfg.rates.empty()) throw std::invalid_argument("simulate: need service rates");
  for (double r : cfg.rates) {
    if (!(r > 0.0)) throw std::invalid_argument("simulate: service rates must be positive");
  }
  if (!(cfg.lambda >= 0.0)) throw std::invalid_argument("simulate: lambda must be >= 0");
  const double total = std::accumulate(cfg.rates.begin(), cfg.rates.end(), 0.0);
  if (!(total > cfg.lambda)) {
    throw std::domain_error("simulate: total service rate must exceed the arrival rate");
  }
  if (!(cfg.horizon > 0.0)) throw std::invalid_argument("simulate: horizon must be > 0");
  if (!(cfg.warmup_frac >= 0.0 && cfg.warmup_frac < 1.0)) {
    throw std::invalid_argument("simulate: warmup fraction must lie in [0,1)");
  }
  if (cfg.replications < 1) throw std::invalid_argument("simulate: need >= 1 replication");
  if (!cfg.use_rate_based && !cfg.policy.position_weights) {
    throw std::invalid_argument("simulate: policy has no weight function");
  }
}

// One uniform is consumed per routed arrival no matter the policy or the
// idle count, so idle-order policies stay on common random numbers.
int choose_position(const SimConfig& cfg, const std::vector<int>& idle_list,
                    SplitMix64& rt) {
  const std::size_t k = idle_list.size();
  const double u = rt.uniform();
  std::vector<double> w;
  if (cfg.use_rate_based) {
    w.resize(k);
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      w[j] = std::exp(cfg.r * std::log(cfg.rates[idle_list[j]]));
      total += w[j];
    }
    for (double& x : w) x /= total;
  } else {
    w = cfg.policy.position_weights(k);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    acc += w[j];
    if (u < acc) return static_cast<int>(j);
  }
  return static_cast<int>(k) - 1;
}

RepStats run_replication(const SimConfig& cfg, std::uint64_t rep_seed) {
  const int N = static_cast<int>(cfg.rates.size());
  SplitMix64 root(rep_seed);
  SplitMix64 arrivals(root.next());
  SplitMix64 services(root.next());
  SplitMix64 routing(root.next());

  const double T = cfg.horizon;
  const double warm = cfg.warmup_frac * T;

  double t = 0.0;
  std::vector<double> completion(N, kInf);
  std::vector<int> idle_list(N);
  std::iota(idle_list.begin(), idle_list.end(), 0);
  std::deque<Job> queue;

  std::vector<double> idle_time(N, 0.0);
  double queue_area = 0.0;
  double wait_sum = 0.0;
  long long wait_count = 0;
  long long served = 0;

  double next_arrival = cfg.lambda > 0.0 ? arrivals.exponential(cfg.lambda) : kInf;

  auto account = [&](double upto) {
    const double lo = std::max(t, warm);
    if (upto > lo) {
      const double span = upto - lo;
      for (int s : idle_list) idle_time[s] += span;
      queue_area += span * static_cast<double>(queue.size());
    }
    t = upto;
  };

  while (true) {
    int dep_server = -1;
    double dep_time = kInf;
    for (int s = 0; s < N; ++s) {
      if (completion[s] < dep_time) {
        dep_time = completion[s];
        dep_server = s;
      }
    }
    // Simultaneous events are measure-zero but determinism needs a rule:
    // arrivals go first.
    const bool is_arrival = next_arrival <= dep_time;
    const double te = is_arrival ? next_arrival : dep_time;
    if (te >= T) {
      account(T);
      break;
    }
    account(te);

    if (is_arrival) {
      Job job{t, services.uniform_open()};
      if (!idle_list.empty()) {
        const int j = choose_position(cfg, idle_list, routing);
        const int s = idle_list[j];
        idle_list.erase(idle_list.begin() + j);
        completion[s] = t - std::log(job.u) / cfg.rates[s];
        if (job.arrival >= warm) ++wait_count;  // zero wait still counts
      } else {
        queue.push_back(job);
      }
      next_arrival = t + arrivals.exponential(cfg.lambda);
    } else {
      const int s = dep_server;
      ++served;
      if (!queue.empty()) {
        const Job job = queue.front();
        queue.pop_front();
        if (job.arrival >= warm) {
          wait_sum += t - job.arrival;
          ++wait_count;
        }
        completion[s] = t - std::log(job.u) / cfg.rates[s];
      } else {
        completion[s] = kInf;
        idle_list.push_back(s);  // freed servers join at the short-idle end
      }
    }
  }

  RepStats out;
  out.idle_fraction.resize(N);
  const double window = T - warm;
  for (int s = 0; s < N; ++s) out.idle_fraction[s] = idle_time[s] / window;
  out.mean_wait = wait_count > 0 ? wait_sum / static_cast<double>(wait_count) : 0.0;
  out.mean_queue = queue_area / window;
  out.served = served;
  return out;
}

// Mean and 95% half-width across replications, folded in replication order.
std::pair<double, double> mean_ci(const std::vector<double>& xs, double t_crit) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, t_crit * sd / std::sqrt(n)};
}

}  // namespace

SimEstimate simulate(const SimConfig& cfg) {
  check_config(cfg);
  const int N = static_cast<int>(cfg.rates.size());
  const int R = cfg.replications;

  std::vector<RepStats> reps(R);
  parallel_for(static_cast<std::size_t>(R), [&](std::size_t i) {
    reps[i] = run_replication(cfg, cfg.seed + static_cast<std::uint64_t>(i));
  });

  SimEstimate out;
  out.idle_fraction.resize(N);
  out.idle_ci.resize(N);
  out.rep_idle.resize(R);
  out.rep_wait.resize(R);
  for (int i = 0; i < R; ++i) {
    out.rep_idle[i] = reps[i].idle_fraction;
    out.rep_wait[i] = reps[i].mean_wait;
    out.total_served += reps[i].served;
  }

  const double t_crit = R >= 2 ? student_t_975(R - 1) : 0.0;
  std::vector<double> column(R);
  for (int s = 0; s < N; ++s) {
    for (int i = 0; i < R; ++i) column[i] = reps[i].idle_fraction[s];
    std::tie(out.idle_fraction[s], out.idle_ci[s]) = mean_ci(column, t_crit);
  }
  for (int i = 0; i < R; ++i) column[i] = reps[i].mean_wait;
  std::tie(out.mean_wait, out.wait_ci) = mean_ci(column, t_crit);
  for (int i = 0; i < R; ++i) column[i] = reps[i].mean_queue;
  std::tie(out.mean_queue_len, out.queue_ci) = mean_ci(column, t_crit);
  return out;
}

std::vector<SimEstimate> compare_policies(const SimConfig& base,
                                          const std::vector<IdleOrderPolicy>& policies) {
  std::vector<SimEstimate> out;
  out.reserve(policies.size());
  for (const auto& pol : policies) {
    SimConfig cfg = base;
    cfg.use_rate_based = false;
    cfg.policy = pol;
    out.push_back(simulate(cfg));
  }
  return out;
}

}  // namespace stratq
