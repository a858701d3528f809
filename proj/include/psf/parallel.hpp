#pragma once

#include <cstddef>
#include <functional>

namespace psf {

// Runtime switch between the OpenMP kernels and the serial reference path.
// All parallel loops write into per-index slots and reduce in index order,
// so both paths produce bit-identical results; tests assert this.
bool parallel_enabled();
void set_parallel(bool on);

namespace detail {

template <class F>
void parallel_for(std::ptrdiff_t n, F&& body) {
  if (parallel_enabled()) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  }
}

}  // namespace detail

}  // namespace psf
