#pragma once

#include "pfs/problem.hpp"
#include "pfs/spectral_basis.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pfs {

/// Coefficient vectors of (w, w_t, u) at one time node.
struct State {
  CoeffVector w;
  CoeffVector v;  // v = w_t
  CoeffVector u;
  double t = 0.0;
};

struct TrajectoryMeta {
  std::array<int, 2> n_modes{1, 1};
  std::string scheme;
  double alpha = 0.0, beta = 0.0, eps = 0.0;
};

/// Time-ordered states on a uniform grid t_k = k dt.
struct Trajectory {
  std::vector<State> states;
  double dt = 0.0;
  TrajectoryMeta meta;

  size_t size() const { return states.size(); }
  const State& back() const { return states.back(); }
};

enum class Scheme { ImexEuler, ImexCn };

std::string to_string(Scheme s);

struct SolverConfig {
  std::array<int, 2> n_modes{16, 1};
  double dt = 1e-3;
  Scheme scheme = Scheme::ImexEuler;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  /// Diagnostic mode: hold (w, v) at their initial values so the phase
  /// equation runs as a pure gradient flow.
  bool freeze_thermal = false;

  void validate() const;
};

/// Base of the solver error hierarchy; carries the failure time.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Newton (or coupling sweep) failed to reach tolerance.
class NewtonError : public SolverError {
 public:
  NewtonError(double time, int iterations, double residual);
  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Non-finite values appeared in the state.
class DivergedError : public SolverError {
 public:
  explicit DivergedError(double time);
};

/// One step of the semidiscrete system in the eigenbasis,
///   w' = v
///   v' = -alpha L v - beta L w - u' + f
///   u' = -L u - P[gamma_eps(u) + g(u)] + v (+ h),
/// with L = diag(lambda_i) and P the quadrature projection of the grid
/// evaluation. The linear stiff terms are implicit; the phase nonlinearity is
/// solved by Newton inside the step. Substep order: the u-equation first
/// (with v lagged at the step start), then the v-equation using the fresh
/// u-update, then w. ImexCn applies trapezoidal weights to the same splitting
/// and closes the u <-> v coupling by a fixed-point sweep iterated to the
/// Newton tolerance, so the converged step is the fully coupled trapezoidal
/// scheme.
class GalerkinStepper {
 public:
  GalerkinStepper(const ProblemData& pd, const SolverConfig& cfg,
                  const SpectralBasis& basis);

  State step(const State& from) const;
  const SpectralBasis& basis() const { return basis_; }

 private:
  CoeffVector nonlinear_term(const CoeffVector& u) const;
  CoeffVector forcing_coeffs(const SpaceTimeFn& fn, double t) const;
  CoeffVector solve_u_equation(const CoeffVector& u_anchor,
                               const CoeffVector& u_start,
                               const CoeffVector& v_new,
                               const CoeffVector& explicit_part, double theta,
                               double time) const;

  const ProblemData& pd_;
  SolverConfig cfg_;
  const SpectralBasis& basis_;
  Eigen::VectorXd lambda_;
};

/// Projections of (w0, v0, u0) onto the basis at t = 0. In the Neumann
/// eigenbasis the H^1- and L^2-orthogonal projections coincide.
State project_initial_data(const InitialData& init, const SpectralBasis& basis);

/// March from t = 0 to t_final (t_final must be an integer multiple of dt).
/// The Yosida selection is recoverable from any stored state as
/// gamma_eps(u) on the grid; see xi_on_grid().
Trajectory solve(const ProblemData& pd, const SolverConfig& cfg,
                 const SpectralBasis& basis);

/// Convenience overload building the basis from cfg.n_modes.
Trajectory solve(const ProblemData& pd, const SolverConfig& cfg);

/// gamma_eps(u) evaluated on the quadrature grid.
GridFunction xi_on_grid(const State& state, const ProblemData& pd,
                        const SpectralBasis& basis);

/// L^2(Omega) residuals of the strong equations at interior time nodes,
/// with central time differences and spectral space derivatives.
struct ResidualReport {
  std::vector<double> times;
  std::vector<double> eq_balance;  // w_tt - alpha lap w_t - beta lap w + u_t - f
  std::vector<double> eq_phase;    // u_t - lap u + gamma_eps(u) + g(u) - w_t - h
  double balance_l2 = 0.0;         // discrete L^2(0,T) aggregates
  double phase_l2 = 0.0;
};

ResidualReport residuals(const Trajectory& traj, const ProblemData& pd,
                         const SpectralBasis& basis);

}  // namespace pfs
