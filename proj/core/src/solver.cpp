#include "pfs/solver.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace pfs {

std::string to_string(Scheme s) {
  return s == Scheme::ImexEuler ? "imex_euler" : "imex_cn";
}

void SolverConfig::validate() const {
  if (n_modes[0] < 1 || n_modes[1] < 1)
    throw std::invalid_argument("solver: n_modes must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("solver: dt must be > 0");
  if (!(newton_tol > 0.0))
    throw std::invalid_argument("solver: newton_tol must be > 0");
  if (newton_max_iter < 1)
    throw std::invalid_argument("solver: newton_max_iter must be >= 1");
}

NewtonError::NewtonError(double time, int iterations, double residual)
    : SolverError(
          [&] {
            std::ostringstream os;
            os << "Newton iteration failed at t = " << time << " after "
               << iterations << " iterations, residual " << residual;
            return os.str();
          }(),
          time),
      iterations_(iterations),
      residual_(residual) {}

DivergedError::DivergedError(double time)
    : SolverError(
          [&] {
            std::ostringstream os;
            os << "solution diverged (non-finite values) at t = " << time;
            return os.str();
          }(),
          time) {}

GalerkinStepper::GalerkinStepper(const ProblemData& pd, const SolverConfig& cfg,
                                 const SpectralBasis& basis)
    : pd_(pd), cfg_(cfg), basis_(basis), lambda_(basis.eigenvalues()) {
  cfg_.validate();
  pd_.params.validate();
}

CoeffVector GalerkinStepper::nonlinear_term(const CoeffVector& u) const {
  const GridFunction grid = basis_.to_grid(u);
  GridFunction vals(grid.size());
  const double eps = pd_.params.eps;
  for (Eigen::Index q = 0; q < grid.size(); ++q)
    vals[q] = pd_.graph.yosida(eps, grid[q]) + pd_.nl.g(grid[q]);
  return basis_.project(vals);
}

CoeffVector GalerkinStepper::forcing_coeffs(const SpaceTimeFn& fn,
                                            double t) const {
  if (!fn) return CoeffVector::Zero(basis_.total_modes());
  GridFunction vals(basis_.grid_size());
  for (int q = 0; q < basis_.grid_size(); ++q) vals[q] = fn(basis_.node(q), t);
  return basis_.project(vals);
}

// Newton on  R(u) = u - u_anchor + dt theta (L u + N(u) - v_new) + explicit_part
// with N the projected nonlinearity. The Jacobian
//   I + dt theta (L + P diag(gamma_eps' + g') S)
// is assembled densely; the system is small in the eigenbasis.
CoeffVector GalerkinStepper::solve_u_equation(const CoeffVector& u_anchor,
                                              const CoeffVector& u_start,
                                              const CoeffVector& v_new,
                                              const CoeffVector& explicit_part,
                                              double theta, double time) const {
  const double dt = cfg_.dt;
  const double eps = pd_.params.eps;
  const int n = basis_.total_modes();
  const Eigen::MatrixXd& synth = basis_.synthesis_matrix();
  const Eigen::MatrixXd& proj = basis_.projection_matrix();

  auto residual = [&](const CoeffVector& u) -> CoeffVector {
    return u - u_anchor +
           dt * theta * (lambda_.cwiseProduct(u) + nonlinear_term(u) - v_new) +
           explicit_part;
  };

  CoeffVector u = u_start;
  CoeffVector r = residual(u);
  const double tol = cfg_.newton_tol * (1.0 + u_anchor.norm());
  for (int iter = 0; iter < cfg_.newton_max_iter; ++iter) {
    const double rnorm = r.norm();
    if (!std::isfinite(rnorm)) throw DivergedError(time);
    if (rnorm <= tol) return u;

    const GridFunction grid = basis_.to_grid(u);
    GridFunction slope(grid.size());
    for (Eigen::Index q = 0; q < grid.size(); ++q)
      slope[q] = pd_.graph.yosida_derivative(eps, grid[q]) + pd_.nl.dg(grid[q]);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n);
    jac += dt * theta * Eigen::MatrixXd(lambda_.asDiagonal());
    jac.noalias() += dt * theta * proj * slope.matrix().asDiagonal() * synth;

    const CoeffVector delta = jac.partialPivLu().solve(r);
    // Backtracking keeps the iteration decreasing through the kinks of a
    // piecewise-linear Yosida map.
    double eta = 1.0;
    CoeffVector u_trial;
    CoeffVector r_trial;
    for (int back = 0; back < 40; ++back) {
      u_trial = u - eta * delta;
      r_trial = residual(u_trial);
      const double tn = r_trial.norm();
      if (std::isfinite(tn) && tn < rnorm) break;
      eta *= 0.5;
    }
    u = u_trial;
    r = r_trial;
  }
  if (r.norm() <= tol) return u;
  throw NewtonError(time, cfg_.newton_max_iter, r.norm());
}

State GalerkinStepper::step(const State& from) const {
  const double dt = cfg_.dt;
  const double alpha = pd_.params.alpha;
  const double beta = pd_.params.beta;
  const double t_new = from.t + dt;

  if (!from.w.allFinite() || !from.v.allFinite() || !from.u.allFinite())
    throw DivergedError(from.t);

  State out;
  out.t = t_new;

  const CoeffVector h_new = forcing_coeffs(pd_.forcing.h, t_new);

  if (cfg_.scheme == Scheme::ImexEuler) {
    // u-equation with lagged v, then the v-equation with the fresh u-update,
    // then w.
    const CoeffVector u_new = solve_u_equation(from.u, from.u, from.v,
                                               -dt * h_new, /*theta=*/1.0,
                                               from.t);

    if (cfg_.freeze_thermal) {
      out.w = from.w;
      out.v = from.v;
      out.u = u_new;
      return out;
    }

    const CoeffVector f_new = forcing_coeffs(pd_.forcing.f, t_new);
    const Eigen::ArrayXd denom =
        1.0 + dt * alpha * lambda_.array() + dt * dt * beta * lambda_.array();
    CoeffVector rhs = from.v - dt * beta * lambda_.cwiseProduct(from.w) +
                      dt * f_new - (u_new - from.u);
    out.v = (rhs.array() / denom).matrix();
    out.w = from.w + dt * out.v;
    out.u = u_new;
    return out;
  }

  // ImexCn: trapezoidal weights on the same splitting. The explicit half of
  // the u-equation is frozen at the step start; the implicit half sees the
  // sweep iterate v_hat, starting from the lagged v. The sweep u -> v repeats
  // until self-consistent, so the converged step is the fully coupled
  // trapezoidal scheme.
  const CoeffVector h_old = forcing_coeffs(pd_.forcing.h, from.t);
  const CoeffVector n_old = nonlinear_term(from.u);
  const CoeffVector expl =
      0.5 * dt *
          (lambda_.cwiseProduct(from.u) + n_old - from.v - h_old) -
      0.5 * dt * h_new;

  if (cfg_.freeze_thermal) {
    out.w = from.w;
    out.v = from.v;
    out.u = solve_u_equation(from.u, from.u, from.v, expl, /*theta=*/0.5,
                             from.t);
    return out;
  }

  const CoeffVector f_old = forcing_coeffs(pd_.forcing.f, from.t);
  const CoeffVector f_new = forcing_coeffs(pd_.forcing.f, t_new);
  const Eigen::ArrayXd denom = 1.0 + 0.5 * dt * alpha * lambda_.array() +
                               0.25 * dt * dt * beta * lambda_.array();

  CoeffVector v_hat = from.v;
  CoeffVector u_new = from.u;
  const double sweep_tol = cfg_.newton_tol * (1.0 + from.v.norm());
  constexpr int kMaxSweeps = 50;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    u_new = solve_u_equation(from.u, u_new, v_hat, expl, /*theta=*/0.5, from.t);

    CoeffVector rhs = from.v - 0.5 * dt * alpha * lambda_.cwiseProduct(from.v) -
                      dt * beta * lambda_.cwiseProduct(from.w) -
                      0.25 * dt * dt * beta * lambda_.cwiseProduct(from.v) +
                      0.5 * dt * (f_old + f_new) - (u_new - from.u);
    CoeffVector v_next = (rhs.array() / denom).matrix();
    const double change = (v_next - v_hat).norm();
    v_hat = v_next;
    if (change <= sweep_tol) {
      out.v = v_hat;
      out.w = from.w + 0.5 * dt * (from.v + out.v);
      out.u = u_new;
      return out;
    }
  }
  throw NewtonError(from.t, kMaxSweeps, (v_hat - from.v).norm());
}

State project_initial_data(const InitialData& init, const SpectralBasis& basis) {
  if (!init.w0 || !init.v0 || !init.u0)
    throw std::invalid_argument("initial data: all three fields required");
  State s;
  s.t = 0.0;
  s.w = basis.project(basis.sample(init.w0));
  s.v = basis.project(basis.sample(init.v0));
  s.u = basis.project(basis.sample(init.u0));
  return s;
}

Trajectory solve(const ProblemData& pd, const SolverConfig& cfg,
                 const SpectralBasis& basis) {
  cfg.validate();
  pd.params.validate();
  const double steps_real = pd.params.t_final / cfg.dt;
  const long long n_steps = std::llround(steps_real);
  if (n_steps < 1 ||
      std::abs(steps_real - static_cast<double>(n_steps)) >
          1e-9 * std::max(1.0, steps_real))
    throw std::invalid_argument("solve: t_final must be a multiple of dt");

  GalerkinStepper stepper(pd, cfg, basis);
  Trajectory traj;
  traj.dt = cfg.dt;
  traj.meta = {cfg.n_modes, to_string(cfg.scheme), pd.params.alpha,
               pd.params.beta, pd.params.eps};
  traj.states.reserve(static_cast<size_t>(n_steps) + 1);
  traj.states.push_back(project_initial_data(pd.init, basis));
  for (long long k = 0; k < n_steps; ++k) {
    State next = stepper.step(traj.states.back());
    next.t = (k + 1) * cfg.dt;  // exact uniform grid
    traj.states.push_back(std::move(next));
  }
  return traj;
}

Trajectory solve(const ProblemData& pd, const SolverConfig& cfg) {
  SpectralBasis basis(pd.domain, cfg.n_modes);
  return solve(pd, cfg, basis);
}

GridFunction xi_on_grid(const State& state, const ProblemData& pd,
                        const SpectralBasis& basis) {
  const GridFunction u = basis.to_grid(state.u);
  GridFunction xi(u.size());
  for (Eigen::Index q = 0; q < u.size(); ++q)
    xi[q] = pd.graph.yosida(pd.params.eps, u[q]);
  return xi;
}

ResidualReport residuals(const Trajectory& traj, const ProblemData& pd,
                         const SpectralBasis& basis) {
  if (traj.size() < 3)
    throw std::invalid_argument("residuals: need at least 3 states");
  ResidualReport rep;
  const double dt = traj.dt;
  const Eigen::VectorXd& lambda = basis.eigenvalues();
  auto project_fn = [&](const SpaceTimeFn& fn, double t) -> CoeffVector {
    if (!fn) return CoeffVector::Zero(basis.total_modes());
    GridFunction vals(basis.grid_size());
    for (int q = 0; q < basis.grid_size(); ++q) vals[q] = fn(basis.node(q), t);
    return basis.project(vals);
  };
  for (size_t k = 1; k + 1 < traj.size(); ++k) {
    const State& prev = traj.states[k - 1];
    const State& cur = traj.states[k];
    const State& next = traj.states[k + 1];
    const CoeffVector v_t = (next.v - prev.v) / (2.0 * dt);
    const CoeffVector u_t = (next.u - prev.u) / (2.0 * dt);

    CoeffVector res_a = v_t + pd.params.alpha * lambda.cwiseProduct(cur.v) +
                        pd.params.beta * lambda.cwiseProduct(cur.w) + u_t -
                        project_fn(pd.forcing.f, cur.t);

    GridFunction ugrid = basis.to_grid(cur.u);
    GridFunction nl(ugrid.size());
    for (Eigen::Index q = 0; q < ugrid.size(); ++q)
      nl[q] = pd.graph.yosida(pd.params.eps, ugrid[q]) + pd.nl.g(ugrid[q]);
    CoeffVector res_b = u_t + lambda.cwiseProduct(cur.u) + basis.project(nl) -
                        cur.v - project_fn(pd.forcing.h, cur.t);

    rep.times.push_back(cur.t);
    rep.eq_balance.push_back(res_a.norm());
    rep.eq_phase.push_back(res_b.norm());
  }
  auto l2_of = [&](const std::vector<double>& series) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < series.size(); ++i)
      acc += 0.5 * dt * (series[i] * series[i] + series[i + 1] * series[i + 1]);
    return std::sqrt(acc);
  };
  rep.balance_l2 = l2_of(rep.eq_balance);
  rep.phase_l2 = l2_of(rep.eq_phase);
  return rep;
}

}  // namespace pfs
