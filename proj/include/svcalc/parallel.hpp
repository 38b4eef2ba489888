#pragma once

#include <cstdint>

// Data-parallel loop helper. Bodies must write only to their own index;
// results are then identical to the serial reference regardless of the
// number of threads.

namespace svcalc {

#if defined(_OPENMP)
inline constexpr bool kParallelEnabled = true;
#else
inline constexpr bool kParallelEnabled = false;
#endif

template <class F>
void parallel_for(std::int64_t n, F&& body) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) body(i);
#else
  for (std::int64_t i = 0; i < n; ++i) body(i);
#endif
}

template <class F>
void serial_for(std::int64_t n, F&& body) {
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace svcalc
