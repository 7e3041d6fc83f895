#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace stratq {

// Runs fn(i) for i in [0, n).  Iterations must be independent; callers keep
// determinism by writing into index-owned slots and folding in index order.
// The first exception thrown by any iteration is rethrown after the loop.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
#ifdef _OPENMP
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical
      {
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

inline bool parallel_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace stratq
