#include <benchmark/benchmark.h>

#include "pfs/spectral_basis.hpp"

#include <random>

namespace {

pfs::CoeffVector random_coeffs(const pfs::SpectralBasis& basis) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  pfs::CoeffVector c(basis.total_modes());
  for (int i = 0; i < c.size(); ++i) c[i] = unif(rng);
  return c;
}

void BM_to_grid_1d(benchmark::State& state) {
  pfs::SpectralBasis basis(1.0, static_cast<int>(state.range(0)));
  const auto c = random_coeffs(basis);
  for (auto _ : state) benchmark::DoNotOptimize(basis.to_grid(c));
}
BENCHMARK(BM_to_grid_1d)->Arg(16)->Arg(32)->Arg(64);

void BM_project_roundtrip_1d(benchmark::State& state) {
  pfs::SpectralBasis basis(1.0, static_cast<int>(state.range(0)));
  const auto c = random_coeffs(basis);
  const auto grid = basis.to_grid(c);
  for (auto _ : state) benchmark::DoNotOptimize(basis.project(grid));
}
BENCHMARK(BM_project_roundtrip_1d)->Arg(16)->Arg(32)->Arg(64);

void BM_project_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  pfs::SpectralBasis basis(pfs::BoxDomain{2, {1.0, 1.0}}, {n, n});
  const auto grid = basis.to_grid(random_coeffs(basis));
  for (auto _ : state) benchmark::DoNotOptimize(basis.project(grid));
}
BENCHMARK(BM_project_2d)->Arg(8)->Arg(16);

}  // namespace
