#pragma once

#include <cstdint>
#include <vector>

#include "stratq/ctmc.hpp"

namespace stratq {

// Poisson arrivals, exponential services, FIFO queue.  Routing is either an
// idle-order policy (positions in the idle list) or rate-based with exponent
// r over the currently idle servers.
struct SimConfig {
  double lambda = 1.0;
  std::vector<double> rates;
  bool use_rate_based = false;
  double r = 0.0;
  IdleOrderPolicy policy = random_policy();
  double horizon = 1e5;
  double warmup_frac = 0.1;
  int replications = 10;
  std::uint64_t seed = 1;
};

// Replication-level and aggregated estimates; confidence intervals are 95%
// Student-t half-widths across replications.
struct SimEstimate {
  std::vector<double> idle_fraction;
  std::vector<double> idle_ci;
  double mean_wait = 0.0;
  double wait_ci = 0.0;
  double mean_queue_len = 0.0;
  double queue_ci = 0.0;
  long long total_served = 0;
  std::vector<std::vector<double>> rep_idle;  // [replication][server]
  std::vector<double> rep_wait;
};

// Deterministic for a fixed SimConfig: replication i draws every stream from
// seed+i, and results merge in replication order regardless of scheduling.
SimEstimate simulate(const SimConfig& cfg);

// Runs each policy against the same arrival, service, and routing streams
// (common random numbers), in the given order.
std::vector<SimEstimate> compare_policies(const SimConfig& base,
                                          const std::vector<IdleOrderPolicy>& policies);

}  // namespace stratq
