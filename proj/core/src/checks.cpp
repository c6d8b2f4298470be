#include "pfs/checks.hpp"

#include "pfs/asymptotics.hpp"
#include "pfs/diagnostics.hpp"
#include "pfs/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace pfs {

namespace {

struct Catalog {
  std::vector<std::pair<std::string, MonotoneGraph>> graphs;
  Catalog() {
    graphs.emplace_back("double_obstacle", MonotoneGraph::double_obstacle(-1, 1));
    graphs.emplace_back("power3", MonotoneGraph::power(3));
    graphs.emplace_back("linear2", MonotoneGraph::linear(2.0));
    graphs.emplace_back("zero", MonotoneGraph::zero());
    graphs.emplace_back("sinh", MonotoneGraph::smooth(
                                    [](double s) { return std::sinh(s); },
                                    [](double s) { return std::cosh(s); },
                                    [](double s) { return std::cosh(s) - 1.0; },
                                    std::cosh(3.0)));
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult basis_orthonormality() {
  double worst = 0.0;
  for (int n : {4, 16, 64}) {
    SpectralBasis basis(1.0, n);
    const Eigen::MatrixXd gram =
        basis.projection_matrix() * basis.synthesis_matrix();
    worst = std::max(
        worst, (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
  }
  SpectralBasis basis2(BoxDomain{2, {1.0, 1.5}}, {6, 5});
  const int n2 = basis2.total_modes();
  const Eigen::MatrixXd gram2 =
      basis2.projection_matrix() * basis2.synthesis_matrix();
  worst = std::max(
      worst, (gram2 - Eigen::MatrixXd::Identity(n2, n2)).cwiseAbs().maxCoeff());
  return {"basis_orthonormality", worst <= 1e-12,
          "max Gram deviation " + fmt(worst)};
}

CheckResult basis_nested_projection() {
  SpectralBasis big(1.0, 24), small(1.0, 9);
  auto f = [](const std::array<double, 2>& x) {
    return std::exp(std::cos(std::numbers::pi * x[0])) + x[0] * x[0];
  };
  const CoeffVector cb = big.project(big.sample(f));
  const CoeffVector cs = small.project(small.sample(f));
  double worst = 0.0;
  for (int i = 0; i < small.total_modes(); ++i)
    worst = std::max(worst, std::abs(cb[i] - cs[i]));
  return {"basis_nested_projection", worst <= 1e-12,
          "max coefficient deviation " + fmt(worst)};
}

CheckResult basis_projection_contraction() {
  SpectralBasis basis(1.0, 8);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = -1.0;
  for (int trial = 0; trial < 50; ++trial) {
    GridFunction g(basis.grid_size());
    for (int q = 0; q < basis.grid_size(); ++q) g[q] = unif(rng);
    const double before = basis.grid_l2_norm(g);
    const double after = basis.norms(basis.project(g)).l2;
    worst = std::max(worst, after - before);
  }
  return {"basis_projection_contraction", worst <= 1e-12,
          "max norm growth " + fmt(worst)};
}

CheckResult yosida_properties() {
  const Catalog catalog;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  int violations = 0;
  double worst = 0.0;
  for (const auto& [name, graph] : catalog.graphs) {
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      if (std::abs(graph.yosida(eps, 0.0)) > 1e-12) ++violations;
      for (int i = 0; i < 2000; ++i) {
        const double s = unif(rng), t = unif(rng);
        const double ys = graph.yosida(eps, s), yt = graph.yosida(eps, t);
        if ((ys - yt) * (s - t) < -1e-12) ++violations;
        if (std::abs(ys - yt) > std::abs(s - t) / eps + 1e-12) ++violations;
        if (graph.in_domain(s) &&
            std::abs(ys) > std::abs(graph.minimal_section(s)) + 1e-12)
          ++violations;
        const double me = graph.moreau(eps, s);
        if (me < -1e-12 || me > graph.potential(s) + 1e-12) ++violations;
        worst = std::max(worst, std::abs(graph.yosida(eps, 0.0)));
      }
    }
  }
  return {"yosida_properties", violations == 0,
          violations == 0 ? "no violations in 2000 samples per graph/eps"
                          : std::to_string(violations) + " violations"};
}

CheckResult moreau_derivative() {
  const Catalog catalog;
  double worst_order = 10.0;
  for (const auto& [name, graph] : catalog.graphs) {
    if (graph.kind() == MonotoneGraph::Kind::Zero) continue;
    const double eps = 0.05;
    // Smooth sample point away from any kink.
    const double s = graph.kind() == MonotoneGraph::Kind::DoubleObstacle
                         ? 1.7
                         : 0.8;
    auto fd = [&](double h) {
      return (graph.moreau(eps, s + h) - graph.moreau(eps, s - h)) / (2.0 * h);
    };
    const double exact = graph.yosida(eps, s);
    const double e1 = std::abs(fd(1e-3) - exact);
    const double e2 = std::abs(fd(1e-4) - exact);
    if (e1 < 1e-10) continue;  // locally quadratic envelope: FD is exact
    const double order = std::log10(e1 / e2);
    worst_order = std::min(worst_order, order);
  }
  return {"moreau_derivative", worst_order >= 1.9,
          "min observed FD order " + fmt(worst_order)};
}

CheckResult yosida_limit() {
  const Catalog catalog;
  // Interior samples per graph, sized so that the O(eps |gamma' gamma|)
  // convergence error can reach 1e-8 within eps = 2^-20.
  const std::map<std::string, std::vector<double>> samples = {
      {"double_obstacle", {-0.9, -0.3, 0.4, 0.8}},
      {"power3", {-0.3, -0.15, 0.1, 0.25}},
      {"linear2", {-0.002, -0.001, 0.0005, 0.002}},
      {"zero", {-1.0, 0.5, 2.0}},
      {"sinh", {-0.01, -0.004, 0.003, 0.008}},
  };
  double worst = 0.0;
  for (const auto& [name, graph] : catalog.graphs) {
    for (double s : samples.at(name)) {
      double err_final = 0.0;
      double prev_moreau = -1e-300;
      for (int k = 1; k <= 20; ++k) {
        // eps shrinking: the envelope climbs monotonically toward phi.
        const double eps = std::pow(2.0, -k);
        err_final =
            std::abs(graph.yosida(eps, s) - graph.minimal_section(s));
        const double me = graph.moreau(eps, s);
        if (me < prev_moreau - 1e-12 || me > graph.potential(s) + 1e-12)
          return {"yosida_limit", false, "moreau not monotone in eps"};
        prev_moreau = me;
      }
      worst = std::max(worst, err_final);
    }
  }
  return {"yosida_limit", worst <= 1e-8,
          "max |gamma_eps - gamma^0| at eps = 2^-20: " + fmt(worst)};
}

CheckResult flux_additivity() {
  SpectralBasis basis(1.0, 6);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CoeffVector w(basis.total_modes()), v(basis.total_modes());
  for (int i = 0; i < basis.total_modes(); ++i) {
    w[i] = unif(rng);
    v[i] = unif(rng);
  }
  const auto q1 = heat_flux(FluxLaw::TypeI, w, v, 1.3, 0.7, basis);
  const auto q2 = heat_flux(FluxLaw::TypeII, w, v, 1.3, 0.7, basis);
  const auto q3 = heat_flux(FluxLaw::TypeIII, w, v, 1.3, 0.7, basis);
  double worst = 0.0;
  for (int d = 0; d < 2; ++d)
    worst = std::max(worst, (q3[d] - (q1[d] + q2[d])).abs().maxCoeff());
  return {"flux_additivity", worst == 0.0, "max deviation " + fmt(worst)};
}

CheckResult enthalpy_linearity() {
  GridFunction a(4), b(4);
  a << 1.0, -2.0, 0.5, 3.0;
  b << 0.25, 1.5, -0.75, 2.0;
  const GridFunction lhs = enthalpy(3.0 * a, 3.0 * b);
  const GridFunction rhs = 3.0 * enthalpy(a, b);
  const double worst = (lhs - rhs).abs().maxCoeff();
  return {"enthalpy_linearity", worst == 0.0, "max deviation " + fmt(worst)};
}

CheckResult convolution_checks() {
  const double dt = 0.01;
  const size_t n = 101;
  std::vector<double> ones(n, 1.0), c(n, 2.5);
  const auto run = convolve_time(ones, c, dt);
  double worst = 0.0;
  for (size_t k = 0; k < n; ++k)
    worst = std::max(worst, std::abs(run[k] - 2.5 * (dt * double(k))));
  // Bilinearity on random series.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> a(n), b(n), d(n);
  for (size_t k = 0; k < n; ++k) {
    a[k] = unif(rng);
    b[k] = unif(rng);
    d[k] = unif(rng);
  }
  std::vector<double> bd(n);
  for (size_t k = 0; k < n; ++k) bd[k] = 2.0 * b[k] + 3.0 * d[k];
  const auto lhs = convolve_time(a, bd, dt);
  const auto r1 = convolve_time(a, b, dt);
  const auto r2 = convolve_time(a, d, dt);
  for (size_t k = 0; k < n; ++k)
    worst = std::max(worst,
                     std::abs(lhs[k] - 2.0 * r1[k] - 3.0 * r2[k]));
  return {"convolution_checks", worst <= 1e-12, "max deviation " + fmt(worst)};
}

ProblemData small_problem() {
  ProblemData pd;
  pd.domain = {1, {1.0, 1.0}};
  pd.params = {1.0, 0.1, 1e-2, 0.05};
  pd.graph = MonotoneGraph::double_obstacle(-1, 1);
  pd.nl = SmoothNonlinearity::double_well();
  pd.init.w0 = InitialData::constant(0.0);
  pd.init.v0 = InitialData::cosine(pd.domain, 0.1, {1, 0});
  pd.init.u0 = InitialData::cosine(pd.domain, 0.5, {1, 0});
  return pd;
}

CheckResult solver_determinism() {
  const ProblemData pd = small_problem();
  SolverConfig cfg;
  cfg.n_modes = {8, 1};
  cfg.dt = 1e-3;
  const Trajectory a = solve(pd, cfg);
  const Trajectory b = solve(pd, cfg);
  bool same = a.size() == b.size();
  for (size_t k = 0; same && k < a.size(); ++k)
    same = a.states[k].w == b.states[k].w && a.states[k].v == b.states[k].v &&
           a.states[k].u == b.states[k].u;
  return {"solver_determinism", same,
          same ? "bitwise-identical replay" : "trajectories differ"};
}

CheckResult equilibrium_fixed_point() {
  ProblemData pd;
  pd.domain = {1, {1.0, 1.0}};
  pd.params = {1.0, 0.5, 1e-2, 0.05};
  pd.graph = MonotoneGraph::zero();
  pd.nl = SmoothNonlinearity::zero();
  pd.init.w0 = InitialData::constant(0.7);
  pd.init.v0 = InitialData::constant(0.0);
  pd.init.u0 = InitialData::constant(0.0);
  SolverConfig cfg;
  cfg.n_modes = {8, 1};
  cfg.dt = 1e-2;
  const Trajectory traj = solve(pd, cfg);
  double worst = 0.0;
  const State& first = traj.states.front();
  for (const State& s : traj.states) {
    worst = std::max(worst, (s.w - first.w).cwiseAbs().maxCoeff());
    worst = std::max(worst, s.v.cwiseAbs().maxCoeff());
    worst = std::max(worst, s.u.cwiseAbs().maxCoeff());
  }
  return {"equilibrium_fixed_point", worst <= 1e-12,
          "max drift " + fmt(worst)};
}

CheckResult mode0_oracle() {
  ProblemData pd;
  pd.domain = {1, {1.0, 1.0}};
  pd.params = {1.0, 0.3, 1e-2, 1.0};
  pd.graph = MonotoneGraph::zero();
  pd.nl = SmoothNonlinearity::zero();
  const double c1 = 0.8, c2 = -0.2;
  pd.init.w0 = InitialData::constant(0.3);
  pd.init.v0 = InitialData::constant(c1);
  pd.init.u0 = InitialData::constant(c2);
  const double v_exact = c1 * std::exp(-1.0);
  const double u_exact = c2 + c1 * (1.0 - std::exp(-1.0));
  bool pass = true;
  std::ostringstream detail;
  for (Scheme scheme : {Scheme::ImexEuler, Scheme::ImexCn}) {
    SolverConfig cfg;
    cfg.n_modes = {4, 1};
    cfg.dt = 1e-2;
    cfg.scheme = scheme;
    const Trajectory traj = solve(pd, cfg);
    const State& last = traj.back();
    const double err = std::abs(last.v[0] - v_exact) +
                       std::abs(last.u[0] - u_exact);
    const double bound =
        scheme == Scheme::ImexEuler ? 5.0 * cfg.dt : 5.0 * cfg.dt * cfg.dt;
    pass = pass && err <= bound;
    detail << to_string(scheme) << " err " << fmt(err) << " bound "
           << fmt(bound) << "; ";
  }
  return {"mode0_oracle", pass, detail.str()};
}

CheckResult energy_dissipation() {
  ProblemData pd = small_problem();
  pd.params.t_final = 1.0;
  pd.init.v0 = InitialData::constant(0.0);
  SolverConfig cfg;
  cfg.n_modes = {8, 1};
  cfg.dt = 1e-2;
  cfg.freeze_thermal = true;
  const Trajectory traj = solve(pd, cfg);
  SpectralBasis basis(pd.domain, cfg.n_modes);
  const MonitorReport rep = monitor(traj, pd, basis);
  const double inc = rep.at("energy_max_step_increase");
  return {"energy_dissipation", inc <= 1e-10,
          "max per-step energy increase " + fmt(inc)};
}

CheckResult rate_fit_exactness() {
  std::vector<double> params = {1e-1, 2.5e-2, 6.25e-3, 1.5625e-3};
  std::vector<double> errs(params.size());
  const double p = 1.37, c = 0.42;
  for (size_t i = 0; i < params.size(); ++i) errs[i] = c * std::pow(params[i], p);
  const RateFit fit = fit_rate(params, errs);
  const double err = std::abs(fit.slope - p);
  return {"rate_fit_exactness", err <= 1e-10 && fit.residual <= 1e-10,
          "slope error " + fmt(err)};
}

CheckResult config_round_trip(const RunConfig& config) {
  const ParseResult reparsed = parse_config(serialize_config(config));
  const bool ok = reparsed.ok() && *reparsed.config == config;
  return {"config_round_trip", ok,
          ok ? "parse(serialize(config)) == config" : "round trip mismatch"};
}

CheckResult snapshot_round_trip() {
  const ProblemData pd = small_problem();
  SolverConfig cfg;
  cfg.n_modes = {6, 1};
  cfg.dt = 1e-2;
  const Trajectory traj = solve(pd, cfg);
  const auto path = std::filesystem::temp_directory_path() /
                    "pfs_check_snapshot.snap";
  write_snapshot(path.string(), traj, pd.domain);
  const Snapshot snap = read_snapshot(path.string());
  std::filesystem::remove(path);
  bool same = snap.trajectory.size() == traj.size();
  for (size_t k = 0; same && k < traj.size(); ++k)
    same = snap.trajectory.states[k].w == traj.states[k].w &&
           snap.trajectory.states[k].v == traj.states[k].v &&
           snap.trajectory.states[k].u == traj.states[k].u &&
           snap.trajectory.states[k].t == traj.states[k].t;
  return {"snapshot_round_trip", same,
          same ? "bitwise round trip" : "states differ after read"};
}

}  // namespace

std::vector<CheckResult> run_property_checks(const RunConfig& config) {
  std::vector<CheckResult> results;
  results.push_back(basis_orthonormality());
  results.push_back(basis_nested_projection());
  results.push_back(basis_projection_contraction());
  results.push_back(yosida_properties());
  results.push_back(moreau_derivative());
  results.push_back(yosida_limit());
  results.push_back(flux_additivity());
  results.push_back(enthalpy_linearity());
  results.push_back(convolution_checks());
  results.push_back(solver_determinism());
  results.push_back(equilibrium_fixed_point());
  results.push_back(mode0_oracle());
  results.push_back(energy_dissipation());
  results.push_back(rate_fit_exactness());
  results.push_back(config_round_trip(config));
  results.push_back(snapshot_round_trip());
  return results;
}

}  // namespace pfs
