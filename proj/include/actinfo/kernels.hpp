#pragma once

// Data-parallel inner loops. Every OpenMP kernel has a serial twin that is
// kept as the reference implementation for tests and benchmarks; both sum in
// the same order, so their results are bitwise identical for any thread count.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace actinfo {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace kernels {

/// out = v * M (row vector times row-major matrix).
void vec_mat(std::span<const double> v, const Matrix& m, std::span<double> out);
void vec_mat_serial(std::span<const double> v, const Matrix& m, std::span<double> out);

/// Below this many columns vec_mat runs on a single thread.
inline constexpr std::size_t kParallelColumns = 256;

/// Runs body(i) for i in [0, n), one OpenMP task per index. The body must
/// write only to slots owned by i. The exception of the lowest failing index
/// is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const long long count = static_cast<long long>(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class Body>
void serial_for(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

void set_threads(int jobs);
int max_threads();

}  // namespace kernels
}  // namespace actinfo
