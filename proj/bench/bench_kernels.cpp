// Serial reference vs OpenMP kernels on random dense tensors.
//
//   ./bench_kernels --benchmark_filter=apply_m1
//   OMP_NUM_THREADS=8 ./bench_kernels

#include <benchmark/benchmark.h>

#include <random>

#include "perron/kernels.hpp"

namespace {

perron::DenseTensor make_tensor(int m, int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  perron::DenseTensor t(m, n);
  for (double& v : t.entries()) v = u(rng);
  return t;
}

perron::Vector make_vector(int n) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  perron::Vector x(static_cast<std::size_t>(n));
  for (double& v : x) v = u(rng);
  return x;
}

template <auto Kernel>
void contraction(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const auto a = make_tensor(m, n);
  const auto x = make_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, x));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(a.size()));
}

template <auto Kernel>
void symmetrize(benchmark::State& state) {
  const auto a = make_tensor(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(a));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(a.size()));
}

void shapes(benchmark::internal::Benchmark* b) {
  b->Args({3, 20})->Args({3, 100})->Args({3, 200})->Args({4, 10})->Args({4, 50});
}

}  // namespace

BENCHMARK(contraction<perron::kernels::serial::apply_m1>)->Name("apply_m1/serial")->Apply(shapes);
BENCHMARK(contraction<perron::kernels::omp::apply_m1>)->Name("apply_m1/omp")->Apply(shapes);
BENCHMARK(contraction<perron::kernels::serial::apply_m2>)->Name("apply_m2/serial")->Apply(shapes);
BENCHMARK(contraction<perron::kernels::omp::apply_m2>)->Name("apply_m2/omp")->Apply(shapes);
BENCHMARK(symmetrize<perron::kernels::serial::partial_symmetrize>)->Name("partial_symmetrize/serial")->Apply(shapes);
BENCHMARK(symmetrize<perron::kernels::omp::partial_symmetrize>)->Name("partial_symmetrize/omp")->Apply(shapes);

BENCHMARK_MAIN();
