#include <benchmark/benchmark.h>

#include "pfs/monotone_graph.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace {

std::vector<double> samples(int n) {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::vector<double> s(n);
  for (double& v : s) v = unif(rng);
  return s;
}

void BM_yosida_double_obstacle(benchmark::State& state) {
  const auto graph = pfs::MonotoneGraph::double_obstacle(-1, 1);
  const auto s = samples(1024);
  for (auto _ : state) {
    double acc = 0.0;
    for (double v : s) acc += graph.yosida(1e-2, v);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_yosida_double_obstacle);

void BM_yosida_power3(benchmark::State& state) {
  const auto graph = pfs::MonotoneGraph::power(3);
  const auto s = samples(1024);
  for (auto _ : state) {
    double acc = 0.0;
    for (double v : s) acc += graph.yosida(1e-2, v);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_yosida_power3);

void BM_moreau_power3(benchmark::State& state) {
  const auto graph = pfs::MonotoneGraph::power(3);
  const auto s = samples(1024);
  for (auto _ : state) {
    double acc = 0.0;
    for (double v : s) acc += graph.moreau(1e-2, v);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_moreau_power3);

}  // namespace
