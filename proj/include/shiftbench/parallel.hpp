#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shiftbench::parallel {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs body(i) for every i in [0, n) on the OpenMP team. Iterations must not
// share mutable state. The exception from the lowest failing index is
// rethrown after the loop, so error reporting matches a serial run.
template <class Body>
void for_each_index(std::size_t n, Body&& body) {
  std::exception_ptr first_error;
  std::size_t first_index = n;
  std::mutex guard;
  const auto count = static_cast<long long>(n);
  // About 16 chunks per thread: enough to balance uneven items without
  // paying scheduling cost on cheap ones.
  const long long chunk = std::max(1LL, count / (16LL * max_threads()));
#pragma omp parallel for schedule(dynamic, chunk)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(guard);
      if (static_cast<std::size_t>(i) < first_index) {
        first_index = static_cast<std::size_t>(i);
        first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace shiftbench::parallel
