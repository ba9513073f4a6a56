#pragma once

#include <cstddef>
#include <exception>

#include <omp.h>

namespace radex {

/// Runs fn(i) for i in [0, n) over an OpenMP thread team.
///
/// jobs == 1 executes the plain serial loop (the reference path the tests
/// compare against), jobs == 0 uses the OpenMP default thread count, any
/// other value sets the team size. Work items must be independent and write
/// only to their own output slots; results are then identical for every
/// jobs value. Exceptions are captured and the one thrown by the lowest
/// index is rethrown, so failures are schedule-independent too.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int team = jobs == 0 ? omp_get_max_threads() : jobs;
  std::exception_ptr first_error = nullptr;
  std::size_t first_error_index = n;
#pragma omp parallel for num_threads(team) schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(radex_parallel_for_error)
      {
        if (static_cast<std::size_t>(i) < first_error_index) {
          first_error_index = static_cast<std::size_t>(i);
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace radex
