#include "pfs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pfs {

namespace {

double trapezoid_of_squares(const std::vector<double>& values, double dt) {
  double acc = 0.0;
  for (size_t i = 0; i + 1 < values.size(); ++i)
    acc += 0.5 * dt * (values[i] * values[i] + values[i + 1] * values[i + 1]);
  return std::sqrt(acc);
}

double max_of(const std::vector<double>& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

}  // namespace

double MonitorReport::at(const std::string& name) const {
  for (const auto& [key, value] : channels)
    if (key == name) return value;
  throw std::out_of_range("monitor channel not found: " + name);
}

bool MonitorReport::all_finite() const {
  for (const auto& [key, value] : channels)
    if (!std::isfinite(value)) return false;
  return true;
}

const std::vector<std::string>& monitor_channel_names() {
  static const std::vector<std::string> names = {
      "u_linf_H",
      "u_l2_V",
      "grad_u_l2_Q",
      "v_l2_Q",
      "v_linf_H",
      "sqrt_alpha_grad_w_linf_H",
      "sqrt_beta_grad_w_linf_H",
      "du_dt_l2_Q",
      "phi_eps_u_sup_L1",
      "v_sup_Q",
      "yosida_u_sup_Q",
      "obstacle_overshoot_sup",
      "energy_initial",
      "energy_final",
      "energy_max_step_increase",
      "enthalpy_residual_l2Q",
  };
  return names;
}

std::vector<double> convolve_time(const std::vector<double>& a,
                                  const std::vector<double>& b, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("convolve_time: dt must be > 0");
  const bool broadcast = b.size() == 1;
  if (!broadcast && a.size() != b.size())
    throw std::invalid_argument("convolve_time: grids do not match");
  auto bval = [&](size_t i) { return broadcast ? b[0] : b[i]; };
  std::vector<double> out(a.size(), 0.0);
  for (size_t k = 0; k < a.size(); ++k) {
    double acc = 0.0;
    for (size_t j = 0; j + 1 <= k; ++j) {
      const double f0 = a[j] * bval(k - j);
      const double f1 = a[j + 1] * bval(k - j - 1);
      acc += 0.5 * dt * (f0 + f1);
    }
    out[k] = acc;
  }
  return out;
}

MonitorReport monitor(const Trajectory& traj, const ProblemData& pd,
                      const SpectralBasis& basis) {
  if (traj.states.empty()) throw std::invalid_argument("monitor: empty trajectory");
  const double dt = traj.dt;
  const double eps = pd.params.eps;
  const size_t n = traj.size();

  std::vector<double> u_H(n), u_V(n), grad_u(n), v_H(n), grad_w(n);
  std::vector<double> phi_int(n), energy(n);
  double v_sup = 0.0, xi_sup = 0.0, overshoot = 0.0;

  auto envelope = [&](double s) { return pd.graph.moreau(eps, s); };
  const double lo = pd.graph.domain_lower();
  const double hi = pd.graph.domain_upper();

  for (size_t k = 0; k < n; ++k) {
    const State& s = traj.states[k];
    const auto nu = basis.norms(s.u);
    u_H[k] = nu.l2;
    u_V[k] = basis.h1_norm(s.u);
    grad_u[k] = nu.h1_semi;
    v_H[k] = s.v.norm();
    grad_w[k] = basis.norms(s.w).h1_semi;

    const GridFunction ugrid = basis.to_grid(s.u);
    const GridFunction vgrid = basis.to_grid(s.v);
    GridFunction phi_vals(ugrid.size());
    for (Eigen::Index q = 0; q < ugrid.size(); ++q) {
      phi_vals[q] = envelope(ugrid[q]);
      xi_sup = std::max(xi_sup, std::abs(pd.graph.yosida(eps, ugrid[q])));
      v_sup = std::max(v_sup, std::abs(vgrid[q]));
      overshoot = std::max(
          overshoot, std::max(ugrid[q] - hi, lo - ugrid[q]));
    }
    phi_int[k] = basis.integrate(phi_vals);
    energy[k] = free_energy(vgrid, ugrid, basis, envelope, pd.nl.G);
  }
  overshoot = std::max(overshoot, 0.0);

  std::vector<double> du_dt(n > 1 ? n - 1 : 0);
  for (size_t k = 0; k + 1 < n; ++k)
    du_dt[k] = (traj.states[k + 1].u - traj.states[k].u).norm() / dt;
  double du_dt_l2 = 0.0;
  for (double d : du_dt) du_dt_l2 += dt * d * d;  // piecewise-constant rule
  du_dt_l2 = std::sqrt(du_dt_l2);

  double max_increase = 0.0;
  for (size_t k = 0; k + 1 < n; ++k)
    max_increase = std::max(max_increase, energy[k + 1] - energy[k]);

  // Enthalpy balance e_t + div q - f; identical to the strong residual of the
  // balance equation.
  double enthalpy_res = 0.0;
  if (n >= 3) {
    const ResidualReport rr = residuals(traj, pd, basis);
    enthalpy_res = rr.balance_l2;
  }

  MonitorReport rep;
  rep.times.resize(n);
  for (size_t k = 0; k < n; ++k) rep.times[k] = traj.states[k].t;
  rep.energy_trace = energy;
  rep.channels = {
      {"u_linf_H", max_of(u_H)},
      {"u_l2_V", trapezoid_of_squares(u_V, dt)},
      {"grad_u_l2_Q", trapezoid_of_squares(grad_u, dt)},
      {"v_l2_Q", trapezoid_of_squares(v_H, dt)},
      {"v_linf_H", max_of(v_H)},
      {"sqrt_alpha_grad_w_linf_H", std::sqrt(pd.params.alpha) * max_of(grad_w)},
      {"sqrt_beta_grad_w_linf_H", std::sqrt(pd.params.beta) * max_of(grad_w)},
      {"du_dt_l2_Q", du_dt_l2},
      {"phi_eps_u_sup_L1", max_of(phi_int)},
      {"v_sup_Q", v_sup},
      {"yosida_u_sup_Q", xi_sup},
      {"obstacle_overshoot_sup", overshoot},
      {"energy_initial", energy.front()},
      {"energy_final", energy.back()},
      {"energy_max_step_increase", max_increase},
      {"enthalpy_residual_l2Q", enthalpy_res},
  };
  return rep;
}

const std::vector<std::string>& difference_channel_names() {
  static const std::vector<std::string> names = {
      "dw_l2_H",    "dw_dt_l2_H", "dw_h1_H",   "dw_linf_V",  "dv_linf_H",
      "du_linf_H",  "du_l2_V",    "du_h1_H",   "du_linf_V",  "du_l2_W",
      "dw_w1inf_V", "dw_h1_W",    "dv_dual_linf", "err1_bundle", "err2_bundle",
  };
  return names;
}

std::map<std::string, double> difference_norms(const Trajectory& a,
                                               const Trajectory& b,
                                               const SpectralBasis& basis) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("difference_norms: trajectories incompatible");
  if (std::abs(a.dt - b.dt) > 1e-12)
    throw std::invalid_argument("difference_norms: time grids differ");
  const double dt = a.dt;
  const size_t n = a.size();

  std::vector<double> w_H(n), w_V(n), w_W(n), v_H(n), v_V(n), v_W(n),
      v_dual(n), u_H(n), u_V(n), u_W(n);
  for (size_t k = 0; k < n; ++k) {
    const CoeffVector dw = a.states[k].w - b.states[k].w;
    const CoeffVector dv = a.states[k].v - b.states[k].v;
    const CoeffVector du = a.states[k].u - b.states[k].u;
    w_H[k] = dw.norm();
    w_V[k] = basis.h1_norm(dw);
    w_W[k] = basis.h2_norm(dw);
    v_H[k] = dv.norm();
    v_V[k] = basis.h1_norm(dv);
    v_W[k] = basis.h2_norm(dv);
    v_dual[k] = basis.dual_norm(dv);
    u_H[k] = du.norm();
    u_V[k] = basis.h1_norm(du);
    u_W[k] = basis.h2_norm(du);
  }

  std::vector<double> du_dt(n - 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    const CoeffVector d = (a.states[k + 1].u - a.states[k].u) -
                          (b.states[k + 1].u - b.states[k].u);
    du_dt[k] = d.norm() / dt;
  }
  double du_dt_l2 = 0.0;
  for (double d : du_dt) du_dt_l2 += dt * d * d;
  du_dt_l2 = std::sqrt(du_dt_l2);

  const double dw_l2_H = trapezoid_of_squares(w_H, dt);
  const double dw_dt_l2_H = trapezoid_of_squares(v_H, dt);
  const double dw_h1_H = std::hypot(dw_l2_H, dw_dt_l2_H);
  const double dw_linf_V = max_of(w_V);
  const double du_linf_H = max_of(u_H);
  const double du_l2_V = trapezoid_of_squares(u_V, dt);
  const double du_l2_H = trapezoid_of_squares(u_H, dt);
  const double du_h1_H = std::hypot(du_l2_H, du_dt_l2);
  const double du_linf_V = max_of(u_V);
  const double du_l2_W = trapezoid_of_squares(u_W, dt);
  const double dw_w1inf_V = std::max(max_of(w_V), max_of(v_V));
  const double dw_l2_W = trapezoid_of_squares(w_W, dt);
  const double dv_l2_W = trapezoid_of_squares(v_W, dt);
  const double dw_h1_W = std::hypot(dw_l2_W, dv_l2_W);

  std::map<std::string, double> out;
  out["dw_l2_H"] = dw_l2_H;
  out["dw_dt_l2_H"] = dw_dt_l2_H;
  out["dw_h1_H"] = dw_h1_H;
  out["dw_linf_V"] = dw_linf_V;
  out["dv_linf_H"] = max_of(v_H);
  out["du_linf_H"] = du_linf_H;
  out["du_l2_V"] = du_l2_V;
  out["du_h1_H"] = du_h1_H;
  out["du_linf_V"] = du_linf_V;
  out["du_l2_W"] = du_l2_W;
  out["dw_w1inf_V"] = dw_w1inf_V;
  out["dw_h1_W"] = dw_h1_W;
  out["dv_dual_linf"] = max_of(v_dual);
  out["err1_bundle"] = dw_h1_H + dw_linf_V + du_linf_H + du_l2_V;
  out["err2_bundle"] = dw_w1inf_V + dw_h1_W + du_h1_H + du_linf_V + du_l2_W;
  return out;
}

}  // namespace pfs
