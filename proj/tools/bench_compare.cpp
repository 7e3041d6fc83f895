// Benchmark: staffing search with the worker pool against the serial
// reference.  Results must agree exactly; timings show the speedup.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "stratq/cost.hpp"
#include "stratq/parallel.hpp"
#include "stratq/staffing.hpp"

namespace {

double time_s(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<double> lambdas = {25.0, 50.0, 100.0, 200.0};
  if (argc > 1) {
    lambdas.clear();
    for (int i = 1; i < argc; ++i) lambdas.push_back(std::stod(argv[i]));
  }

  const auto cf = stratq::poly_cost(1.0, 2.0);
  const stratq::EconomicParams econ(1.0, 1.0);

  std::printf("worker pool: %s\n", stratq::parallel_enabled() ? "enabled" : "disabled");
  std::printf("%10s %8s %14s %12s %12s %10s\n", "lambda", "N_opt", "cost", "parallel_s",
              "serial_s", "speedup");

  int mismatches = 0;
  for (double lambda : lambdas) {
    stratq::StaffingResult par, ser;
    const double tp = time_s([&] { par = stratq::n_opt_search(lambda, cf, econ); });
    const double ts = time_s([&] { ser = stratq::n_opt_search_serial(lambda, cf, econ); });

    const bool same = par.feasible == ser.feasible && par.N == ser.N &&
                      par.mu_star == ser.mu_star && par.cost == ser.cost;
    if (!same) ++mismatches;
    std::printf("%10.4g %8d %14.10g %12.4f %12.4f %9.2fx%s\n", lambda, par.N, par.cost,
                tp, ts, ts / tp, same ? "" : "  MISMATCH");
  }

  if (mismatches) {
    std::printf("%d lambda value(s) disagree between the two searches\n", mismatches);
    return 1;
  }
  std::printf("parallel and serial searches agree exactly\n");
  return 0;
}
