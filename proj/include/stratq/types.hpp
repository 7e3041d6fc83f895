#pragma once

#include <stdexcept>

namespace stratq {

// Arrival rate and staffing level of the service system.
struct SystemConfig {
  double lambda;
  int N;

  SystemConfig(double lambda_, int N_) : lambda(lambda_), N(N_) {
    if (!(lambda > 0.0)) throw std::invalid_argument("SystemConfig: lambda must be > 0");
    if (N < 1) throw std::invalid_argument("SystemConfig: N must be >= 1");
  }
};

// Linear cost coefficients of the system manager: c_S per server per unit
// time, w per waiting customer per unit time.
struct EconomicParams {
  double c_S;
  double w;

  EconomicParams(double c_S_, double w_) : c_S(c_S_), w(w_) {
    if (!(c_S > 0.0) || !(w > 0.0))
      throw std::invalid_argument("EconomicParams: c_S and w must be > 0");
  }
};

// One tagged server at rate mu1 while the other N-1 servers share a common
// rate mu.  The stability floor for mu1 is (lambda - (N-1)*mu)^+, which
// depends on the SystemConfig and is checked by the operations that use it.
struct TaggedProfile {
  double mu1;
  double mu;
};

}  // namespace stratq
