#include <benchmark/benchmark.h>

#include "kreinshift/cayley.hpp"
#include "kreinshift/dilation.hpp"
#include "kreinshift/doi.hpp"
#include "kreinshift/rng.hpp"
#include "kreinshift/shift.hpp"

using namespace kreinshift;

namespace {

ContractionPath make_path(int dim) {
  Rng rng(7);
  auto [t0, t1] = random_contraction_pair(rng, dim, 0.9);
  return {t0, t1};
}

void BM_DensityGrid(benchmark::State& state) {
  Rng rng(7);
  const Contraction t = random_contraction(rng, static_cast<int>(state.range(1)), 0.9);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(density_grid(t, m));
}
BENCHMARK(BM_DensityGrid)->Args({256, 4})->Args({1024, 4})->Args({2048, 8});

void BM_DOI(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const ContractionPath p = make_path(4);
  const AnalyticFunction f = AnalyticFunction::exp_partial_sum(8);
  for (auto _ : state) benchmark::DoNotOptimize(path_derivative(f, p, 0.5, m));
}
BENCHMARK(BM_DOI)->Arg(64)->Arg(128)->Arg(256);

void BM_NuDensity(benchmark::State& state) {
  const ContractionPath p = make_path(static_cast<int>(state.range(1)));
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nu_density(p, m, 16));
}
BENCHMARK(BM_NuDensity)->Args({256, 4})->Args({1024, 4});

void BM_XiFourier(benchmark::State& state) {
  const ContractionPath p = make_path(8);
  for (auto _ : state) benchmark::DoNotOptimize(xi_fourier(p, 50, 2048));
}
BENCHMARK(BM_XiFourier);

void BM_ResolventCheck(benchmark::State& state) {
  const DissipativeOperator l0(ComplexMatrix::diagonal({Complex(0.0, 1.0)}));
  const DissipativeOperator l1(ComplexMatrix::diagonal({Complex(0.0, 2.0)}));
  const SpectralShiftFunction xi = xi_for_pair(l0, l1, 50, {0.9, 0.99, 0.999});
  const int points = static_cast<int>(state.range(0));
  const OmegaFunction omega = omega_from_xi(xi, symmetric_geometric_grid(1e-3, 1e3, points));
  for (auto _ : state)
    benchmark::DoNotOptimize(resolvent_trace_check(l0, l1, Complex(0.0, -1.0), omega));
}
BENCHMARK(BM_ResolventCheck)->Arg(2048)->Arg(8192);

} // namespace

BENCHMARK_MAIN();
