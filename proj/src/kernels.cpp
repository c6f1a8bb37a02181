#include "actinfo/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

namespace actinfo::kernels {

namespace {

void check_shapes(std::span<const double> v, const Matrix& m, std::span<double> out) {
  if (static_cast<Eigen::Index>(v.size()) != m.rows() || static_cast<Eigen::Index>(out.size()) != m.cols())
    throw std::invalid_argument("vec_mat: shape mismatch");
}

constexpr std::size_t kBlock = 64;

// Columns [j0, j1) of v*M, accumulated row by row so the summation order of
// each output entry is i = 0, 1, ..., rows-1.
void vec_mat_block(std::span<const double> v, const Matrix& m, std::span<double> out, std::size_t j0,
                   std::size_t j1) {
  std::fill(out.begin() + j0, out.begin() + j1, 0.0);
  const std::size_t rows = v.size();
  for (std::size_t i = 0; i < rows; ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    const double* row = m.data() + i * static_cast<std::size_t>(m.cols());
    for (std::size_t j = j0; j < j1; ++j) out[j] += vi * row[j];
  }
}

}  // namespace

void vec_mat_serial(std::span<const double> v, const Matrix& m, std::span<double> out) {
  check_shapes(v, m, out);
  vec_mat_block(v, m, out, 0, out.size());
}

void vec_mat(std::span<const double> v, const Matrix& m, std::span<double> out) {
  check_shapes(v, m, out);
  const std::size_t cols = out.size();
  if (cols < kParallelColumns) {
    vec_mat_block(v, m, out, 0, cols);
    return;
  }
  const long long blocks = static_cast<long long>((cols + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < blocks; ++b) {
    const std::size_t j0 = static_cast<std::size_t>(b) * kBlock;
    vec_mat_block(v, m, out, j0, std::min(cols, j0 + kBlock));
  }
}

void set_threads(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace actinfo::kernels
