#pragma once

#include <cstdint>
#include <exception>

namespace steklov::detail {

// OpenMP loop over [0, n). Exceptions may not cross the parallel region, so
// the first one thrown is captured and rethrown after the loop.
template <class Body>
void parallel_for(std::int64_t n, Body&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(steklov_parallel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace steklov::detail
