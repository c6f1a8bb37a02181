#include <benchmark/benchmark.h>

#include <vector>

#include "actinfo/kernels.hpp"
#include "actinfo/models.hpp"
#include "actinfo/sampling.hpp"

using namespace actinfo;

namespace {

Matrix random_stochastic(Eigen::Index m) {
  RandomSource rng(11);
  Matrix p(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) row += p(i, j) = rng.uniform();
    p.row(i) /= row;
  }
  return p;
}

template <bool Parallel>
void BM_VecMat(benchmark::State& state) {
  const auto m = static_cast<Eigen::Index>(state.range(0));
  const Matrix p = random_stochastic(m);
  std::vector<double> v(static_cast<std::size_t>(m), 1.0 / static_cast<double>(m)), out(v.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::vec_mat(v, p, out);
    else kernels::vec_mat_serial(v, p, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * m * m);
}

template <bool Parallel>
void BM_Replicates(benchmark::State& state) {
  const MachineSystem sys = build_machine(MachineModel{5, 0.2, 0.5, 2.5});
  const TransitionKernel k = build_kernel(sys.p0, sys.f, 2.5, sys.q, AcceptanceRule::MoranSquareRoot);
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto r = Parallel ? simulate_replicates(k, sys.p0, 200, &sys.target, 3, reps)
                      : simulate_replicates_serial(k, sys.p0, 200, &sys.target, 3, reps);
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(reps));
}

}  // namespace

BENCHMARK(BM_VecMat<false>)->Name("vec_mat/serial")->Arg(64)->Arg(512)->Arg(4096);
BENCHMARK(BM_VecMat<true>)->Name("vec_mat/openmp")->Arg(64)->Arg(512)->Arg(4096);
BENCHMARK(BM_Replicates<false>)->Name("replicates/serial")->Arg(10000);
BENCHMARK(BM_Replicates<true>)->Name("replicates/openmp")->Arg(10000);

BENCHMARK_MAIN();
