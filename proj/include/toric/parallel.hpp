#pragma once

#include <cstddef>

namespace toric {

/// Execution mode for the data-parallel kernels. Every kernel taking an Exec
/// accumulates its results in a fixed order, so the serial and parallel paths
/// produce bit-identical output; tests rely on that.
enum class Exec { serial, parallel };

template <class Body>
void for_each_index(std::ptrdiff_t n, Exec exec, Body&& body) {
  if (exec == Exec::parallel) {
    // Dynamic schedule: per-index cost is very uneven for the exact-moment
    // kernel (work grows steeply with monomial degree).
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
  }
}

}  // namespace toric
