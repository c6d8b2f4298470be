#include <benchmark/benchmark.h>

#include "pfs/solver.hpp"

namespace {

pfs::ProblemData bench_problem() {
  pfs::ProblemData pd;
  pd.domain = {1, {1.0, 1.0}};
  pd.params = {1.0, 0.1, 1e-2, 1.0};
  pd.graph = pfs::MonotoneGraph::double_obstacle(-1, 1);
  pd.nl = pfs::SmoothNonlinearity::double_well();
  pd.init.w0 = pfs::InitialData::cosine(pd.domain, 0.3, {1, 0});
  pd.init.v0 = pfs::InitialData::constant(0.1);
  pd.init.u0 = pfs::InitialData::cosine(pd.domain, 0.6, {1, 0});
  return pd;
}

void BM_step(benchmark::State& state) {
  const pfs::ProblemData pd = bench_problem();
  pfs::SolverConfig cfg;
  cfg.n_modes = {static_cast<int>(state.range(0)), 1};
  cfg.dt = 1e-3;
  cfg.scheme = state.range(1) == 0 ? pfs::Scheme::ImexEuler
                                   : pfs::Scheme::ImexCn;
  pfs::SpectralBasis basis(pd.domain, cfg.n_modes);
  pfs::GalerkinStepper stepper(pd, cfg, basis);
  pfs::State s = pfs::project_initial_data(pd.init, basis);
  for (auto _ : state) {
    s = stepper.step(s);
    s.t = 0.0;  // stay on the initial transient
    benchmark::DoNotOptimize(s.u);
  }
}
BENCHMARK(BM_step)->Args({16, 0})->Args({32, 0})->Args({16, 1})->Args({32, 1});

void BM_solve_short(benchmark::State& state) {
  pfs::ProblemData pd = bench_problem();
  pd.params.t_final = 0.05;
  pfs::SolverConfig cfg;
  cfg.n_modes = {16, 1};
  cfg.dt = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(pfs::solve(pd, cfg));
}
BENCHMARK(BM_solve_short);

}  // namespace

BENCHMARK_MAIN();
