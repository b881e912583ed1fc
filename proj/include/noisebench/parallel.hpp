#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace noisebench {

/// Execution policy for the data-parallel kernels.  Serial is the reference
/// path; Parallel runs the identical per-index work under OpenMP.  Both must
/// produce bit-identical results: every index writes only its own slot and
/// all reductions happen afterwards in index order.
enum class Exec { Serial, Parallel };

template <typename F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(noisebench_for_each_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace noisebench
