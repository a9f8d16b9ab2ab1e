#include <benchmark/benchmark.h>

#include <random>

#include <indist/behaviors.hpp>
#include <indist/correlations.hpp>
#include <indist/exclusivity.hpp>
#include <indist/schmidt.hpp>

using namespace indist;

static void BM_HermitianEig(benchmark::State& state) {
  const Eigen::Index dim = state.range(0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  const Matrix h = 0.5 * (g + g.adjoint());
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h, 1e-9));
}
BENCHMARK(BM_HermitianEig)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_SpectralNorm(benchmark::State& state) {
  const Eigen::Index dim = state.range(0);
  std::mt19937_64 rng(2);
  const Matrix m = random_unitary(dim, rng) - random_unitary(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNorm)->Arg(8)->Arg(32)->Arg(64);

static void BM_SchmidtDecompose(benchmark::State& state) {
  const SuperpositionParams p{2.2, 0.9};
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_decompose(p));
}
BENCHMARK(BM_SchmidtDecompose);

static void BM_LocalDeterministicMax(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto pattern = svetlichny_signs(n);
  for (auto _ : state) benchmark::DoNotOptimize(local_deterministic_max(n, pattern));
}
BENCHMARK(BM_LocalDeterministicMax)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

static void BM_CaseTwoGrid(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(case_two_grid_max(512));
}
BENCHMARK(BM_CaseTwoGrid);

static void BM_QuantumBehaviorGHZ3(benchmark::State& state) {
  const Vector ghz = ghz_state(3);
  const std::vector<std::array<BlochAngles, 2>> angles(
      3, {BlochAngles{1.3, 0.4}, BlochAngles{0.2, 2.1}});
  for (auto _ : state) benchmark::DoNotOptimize(quantum_behavior(ghz, angles));
}
BENCHMARK(BM_QuantumBehaviorGHZ3);

static void BM_TwoCopyPartitionSearch(benchmark::State& state) {
  const auto pattern = svetlichny_signs(2);
  for (auto _ : state) benchmark::DoNotOptimize(find_two_copy_partition(2, pattern));
}
BENCHMARK(BM_TwoCopyPartitionSearch);

BENCHMARK_MAIN();
