#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hfs {

/// Caps the worker count used by chunked reductions (0 = runtime default).
void set_thread_limit(int threads);
int thread_limit();

/// Evaluates chunk(i) for i in [0, count) and sums the results in index order.
/// The summation order never depends on the thread count, so results are
/// bit-identical across runs and machines with the same floating-point model.
template <class Chunk>
double ordered_sum(std::size_t count, Chunk&& chunk) {
  std::vector<double> partial(count, 0.0);
#ifdef _OPENMP
  const int threads = thread_limit() > 0 ? thread_limit() : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (count > 1)
  for (long long i = 0; i < static_cast<long long>(count); ++i)
    partial[static_cast<std::size_t>(i)] = chunk(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < count; ++i) partial[i] = chunk(i);
#endif
  double total = 0.0;
  for (double v : partial) total += v;
  return total;
}

/// Parallel map writing out[i] = fn(i); deterministic because slots are disjoint.
template <class T, class Fn>
void parallel_map(std::vector<T>& out, Fn&& fn) {
#ifdef _OPENMP
  const int threads = thread_limit() > 0 ? thread_limit() : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (out.size() > 1)
  for (long long i = 0; i < static_cast<long long>(out.size()); ++i)
    out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(i);
#endif
}

}  // namespace hfs
