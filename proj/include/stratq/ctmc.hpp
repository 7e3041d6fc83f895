#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stratq/types.hpp"

namespace stratq {

// Routing that depends only on idle-list positions: on an arrival that finds
// k idle servers, position j (1 = longest idle) is chosen with weight w[j-1].
// Weights must sum to 1 for every k in 1..N.
struct IdleOrderPolicy {
  std::string name;
  std::function<std::vector<double>(std::size_t)> position_weights;
};

IdleOrderPolicy random_policy();
IdleOrderPolicy lisf_policy();
IdleOrderPolicy sisf_policy();
// Position j gets weight proportional to k+1-j: biased toward the
// longest-idle end but with full support.
IdleOrderPolicy weighted_random_policy();

// Stationary distribution over ordered idle lists.  states[0] is the empty
// list (all servers busy, no queue); the queue beyond that point is
// geometric with ratio lambda/sum(rates) and is kept analytic.
struct SteadyState {
  std::vector<std::vector<int>> states;
  std::vector<double> probs;   // aligned with states; probs[0] is pi_B
  double pi_B = 0.0;
  double tail_ratio = 0.0;     // lambda / sum(rates)
  double tail_mass = 0.0;      // total probability of queue length >= 1
  std::vector<double> idle_fraction;
  double mean_queue_len = 0.0;
  double mean_wait = 0.0;
};

// All ordered idle lists of servers 0..N-1 (the state space shared by the
// closed form and the generator solve); states[0] is the empty list.
std::vector<std::vector<int>> enumerate_idle_states(int N);

// Closed-form stationary distribution: pi_s = pi_B * prod_{i in s} mu_i/lambda
// for every ordered list s, queue tail geometric.  Requires sum(rates) >
// lambda and N <= 8 (ordered-subset state count grows as sum N!/(N-k)!).
SteadyState product_form(const std::vector<double>& rates, double lambda);

// Independent oracle: assembles the full transition structure (arrivals
// routed by the policy over the ordered idle list, departing servers
// appended at the tail) with the queue truncated at K chosen so that
// tail_ratio^K < 1e-12, and solves the global balance equations.
SteadyState generator_solve(const std::vector<double>& rates, double lambda,
                            const IdleOrderPolicy& policy);

// Same chain construction, but the router sees the actual ordered idle list
// (server identities, not just positions).  Lets tests inject rate-based
// routing as a negative control, which must break the product form.
SteadyState generator_solve_custom(
    const std::vector<double>& rates, double lambda,
    const std::function<std::vector<double>(const std::vector<int>&)>& router);

// Largest violation of the assembled global balance equations by the given
// distribution, with its queue tail extended geometrically.  The closed-form
// stationary law must drive this to numerical zero for every idle-order
// policy.
double balance_residual(const std::vector<double>& rates, double lambda,
                        const IdleOrderPolicy& policy, const SteadyState& ss);

// Max over policies and states of |generator_solve - product_form|, also
// covering per-server idle fractions.
double collapse_check(const std::vector<double>& rates, double lambda,
                      const std::vector<IdleOrderPolicy>& policies);

double idle_fraction_of(const SteadyState& ss, int server);

}  // namespace stratq
