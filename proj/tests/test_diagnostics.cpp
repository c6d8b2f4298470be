#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfs/diagnostics.hpp"

#include <cmath>

using namespace pfs;

namespace {

ProblemData base_problem(double t_final) {
  ProblemData pd;
  pd.domain = {1, {1.0, 1.0}};
  pd.params = {1.0, 0.2, 1e-2, t_final};
  pd.graph = MonotoneGraph::double_obstacle(-1, 1);
  pd.nl = SmoothNonlinearity::double_well();
  pd.init.w0 = InitialData::cosine(pd.domain, 0.2, {1, 0});
  pd.init.v0 = InitialData::constant(0.05);
  pd.init.u0 = InitialData::cosine(pd.domain, 0.5, {1, 0});
  return pd;
}

Trajectory zero_trajectory(int n_modes, int n_states, double dt) {
  Trajectory traj;
  traj.dt = dt;
  for (int k = 0; k < n_states; ++k) {
    State s;
    s.t = k * dt;
    s.w = CoeffVector::Zero(n_modes);
    s.v = CoeffVector::Zero(n_modes);
    s.u = CoeffVector::Zero(n_modes);
    traj.states.push_back(std::move(s));
  }
  return traj;
}

}  // namespace

TEST_CASE("convolution examples") {
  const double dt = 0.01;
  const size_t n = 201;
  std::vector<double> ones(n, 1.0), c(n, 3.0), zero(n, 0.0);
  const auto run = convolve_time(ones, c, dt);
  for (size_t k = 0; k < n; ++k)
    CHECK(run[k] == doctest::Approx(3.0 * dt * double(k)).epsilon(1e-13));
  for (double v : convolve_time(ones, zero, dt)) CHECK(v == 0.0);

  // (1 * e^{-s})(t) = 1 - e^{-t}, trapezoid accurate to O(dt^2).
  std::vector<double> errs;
  for (double h : {0.02, 0.01, 0.005}) {
    const size_t m = static_cast<size_t>(std::round(2.0 / h)) + 1;
    std::vector<double> e(m), one(m, 1.0);
    for (size_t k = 0; k < m; ++k) e[k] = std::exp(-h * double(k));
    const auto conv = convolve_time(one, e, h);
    double worst = 0.0;
    for (size_t k = 0; k < m; ++k)
      worst = std::max(worst,
                       std::abs(conv[k] - (1.0 - std::exp(-h * double(k)))));
    errs.push_back(worst);
  }
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.1));

  CHECK_THROWS_AS(convolve_time({1.0, 2.0}, {1.0, 2.0, 3.0}, dt),
                  std::invalid_argument);
}

TEST_CASE("monitor of the zero trajectory") {
  SpectralBasis basis(1.0, 6);
  ProblemData pd = base_problem(0.1);
  const Trajectory traj = zero_trajectory(6, 11, 0.01);
  const MonitorReport rep = monitor(traj, pd, basis);
  for (const std::string name :
       {"u_linf_H", "u_l2_V", "grad_u_l2_Q", "v_l2_Q", "v_linf_H",
        "sqrt_alpha_grad_w_linf_H", "sqrt_beta_grad_w_linf_H", "du_dt_l2_Q",
        "phi_eps_u_sup_L1", "v_sup_Q", "yosida_u_sup_Q",
        "obstacle_overshoot_sup", "enthalpy_residual_l2Q"})
    CHECK(rep.at(name) == 0.0);
  // |Omega| (phi(0) + G(0)) = 1.
  CHECK(rep.at("energy_initial") == doctest::Approx(1.0));
  CHECK(rep.at("energy_final") == doctest::Approx(1.0));
  CHECK(rep.all_finite());
}

TEST_CASE("monitor of a constant equilibrium run") {
  ProblemData pd;
  pd.domain = {1, {1.0, 1.0}};
  pd.params = {1.0, 0.4, 1e-2, 0.1};
  pd.graph = MonotoneGraph::zero();
  pd.nl = SmoothNonlinearity::zero();
  pd.init.w0 = InitialData::constant(0.6);
  pd.init.v0 = InitialData::constant(0.0);
  pd.init.u0 = InitialData::constant(0.0);
  SolverConfig cfg;
  cfg.n_modes = {6, 1};
  cfg.dt = 1e-2;
  SpectralBasis basis(pd.domain, cfg.n_modes);
  const Trajectory traj = solve(pd, cfg, basis);
  const MonitorReport rep = monitor(traj, pd, basis);
  CHECK(rep.at("v_l2_Q") <= 1e-12);
  CHECK(rep.at("du_dt_l2_Q") <= 1e-12);
  CHECK(rep.at("sqrt_alpha_grad_w_linf_H") <= 1e-12);
  CHECK(rep.at("enthalpy_residual_l2Q") <= 1e-10);
}

TEST_CASE("monitor channel registry is fixed and ordered") {
  SpectralBasis basis(1.0, 4);
  const MonitorReport rep =
      monitor(zero_trajectory(4, 5, 0.1), base_problem(0.4), basis);
  const auto& names = monitor_channel_names();
  REQUIRE(rep.channels.size() == names.size());
  for (size_t i = 0; i < names.size(); ++i)
    CHECK(rep.channels[i].first == names[i]);
}

TEST_CASE("difference norms: identities") {
  ProblemData pd = base_problem(0.1);
  SolverConfig cfg;
  cfg.n_modes = {8, 1};
  cfg.dt = 2e-3;
  SpectralBasis basis(pd.domain, cfg.n_modes);
  const Trajectory a = solve(pd, cfg, basis);

  const auto self = difference_norms(a, a, basis);
  for (const auto& [name, value] : self) CHECK(value == 0.0);

  // Against the zero trajectory the channels reduce to a's own norms.
  const Trajectory zero = zero_trajectory(8, static_cast<int>(a.size()), cfg.dt);
  const auto own = difference_norms(a, zero, basis);
  double u_linf = 0.0;
  for (const State& s : a.states) u_linf = std::max(u_linf, s.u.norm());
  CHECK(own.at("du_linf_H") == doctest::Approx(u_linf).epsilon(1e-13));
}

TEST_CASE("difference norms satisfy the triangle inequality per channel") {
  ProblemData pd = base_problem(0.05);
  SolverConfig cfg;
  cfg.n_modes = {6, 1};
  cfg.dt = 2.5e-3;
  SpectralBasis basis(pd.domain, cfg.n_modes);
  const Trajectory a = solve(pd, cfg, basis);
  ProblemData pd_b = pd;
  pd_b.params.beta = 0.05;
  const Trajectory b = solve(pd_b, cfg, basis);
  ProblemData pd_c = pd;
  pd_c.params.beta = 0.0;
  const Trajectory c = solve(pd_c, cfg, basis);

  const auto ac = difference_norms(a, c, basis);
  const auto ab = difference_norms(a, b, basis);
  const auto bc = difference_norms(b, c, basis);
  for (const auto& [name, value] : ac)
    CHECK(value <= ab.at(name) + bc.at(name) + 1e-12);
}

TEST_CASE("sup-in-time channels grow with the trajectory") {
  ProblemData pd = base_problem(0.1);
  SolverConfig cfg;
  cfg.n_modes = {8, 1};
  cfg.dt = 2e-3;
  SpectralBasis basis(pd.domain, cfg.n_modes);
  const Trajectory full = solve(pd, cfg, basis);
  Trajectory half = full;
  half.states.resize(full.size() / 2);
  const MonitorReport mf = monitor(full, pd, basis);
  const MonitorReport mh = monitor(half, pd, basis);
  for (const std::string name :
       {"u_linf_H", "v_linf_H", "sqrt_alpha_grad_w_linf_H", "v_sup_Q",
        "yosida_u_sup_Q", "phi_eps_u_sup_L1"})
    CHECK(mh.at(name) <= mf.at(name) + 1e-15);
}

TEST_CASE("enthalpy balance residual matches the strong balance residual") {
  ProblemData pd = base_problem(0.1);
  SolverConfig cfg;
  cfg.n_modes = {8, 1};
  cfg.dt = 2e-3;
  SpectralBasis basis(pd.domain, cfg.n_modes);
  const Trajectory traj = solve(pd, cfg, basis);
  const MonitorReport rep = monitor(traj, pd, basis);
  const ResidualReport res = residuals(traj, pd, basis);
  CHECK(rep.at("enthalpy_residual_l2Q") == doctest::Approx(res.balance_l2));
}

TEST_CASE("enthalpy residual shrinks under refinement") {
  ProblemData pd = base_problem(0.2);
  pd.graph = MonotoneGraph::power(3);
  SolverConfig cfg;
  cfg.n_modes = {8, 1};
  SpectralBasis basis(pd.domain, cfg.n_modes);
  std::vector<double> res;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    cfg.dt = dt;
    const Trajectory traj = solve(pd, cfg, basis);
    res.push_back(monitor(traj, pd, basis).at("enthalpy_residual_l2Q"));
  }
  CHECK(res[0] / res[1] == doctest::Approx(2.0).epsilon(0.35));
  CHECK(res[1] / res[2] == doctest::Approx(2.0).epsilon(0.35));
}
