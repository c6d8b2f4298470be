#pragma once

#include "pfs/diagnostics.hpp"
#include "pfs/problem.hpp"
#include "pfs/solver.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pfs {

/// Ladder of a single refinement parameter plus the base setup. For beta
/// sweeps the data are perturbed per level:
///   f_beta = f + s(beta) df,  w0_beta = w0 + s(beta) dw,  etc.,
/// with s(beta) = beta^data_scale_exponent. Exponent 1 matches the linear
/// data-rate hypotheses of the error estimates; smaller exponents weaken the
/// scaling (reported, never asserted) and the perturbation can be disabled.
struct SweepPlan {
  enum class Parameter { Beta, Eps, NModes, Dt };

  Parameter parameter = Parameter::Beta;
  std::vector<double> values;  // strictly decreasing (increasing for n_modes)
  ProblemData base;
  SolverConfig config;
  bool perturb_data = true;
  double data_scale_exponent = 1.0;
  int threads = 1;

  void validate() const;
};

std::string to_string(SweepPlan::Parameter p);

/// Per-level channels plus fitted log-log slopes. Slopes are least-squares
/// fits of log(channel) against log(parameter), computed per channel over the
/// levels where the channel is positive; residual is the RMS misfit in log10.
struct RateReport {
  std::string parameter;
  std::vector<double> values;
  std::vector<std::map<std::string, double>> levels;
  std::map<std::string, double> slopes;
  std::map<std::string, double> fit_residuals;
  std::map<std::string, double> reference;  // monitor of the reference run
  std::vector<std::string> failures;  // per-level error messages, if any
};

struct RateFit {
  double slope = 0.0;
  double residual = 0.0;
  int points = 0;
};

/// Least-squares fit of log(err) vs log(param); exact for err = c param^p.
RateFit fit_rate(const std::vector<double>& params,
                 const std::vector<double>& errors);

/// Solve the ladder of beta values with data perturbations and compare each
/// level against the beta = 0 reference computed at the same (n, dt, eps).
/// The reference is produced by the ordinary solve() path; pass reference_out
/// to obtain it.
RateReport beta_sweep(const SweepPlan& plan, Trajectory* reference_out);
RateReport beta_sweep(const SweepPlan& plan);

/// Ladder of Yosida parameters at fixed beta; differences are taken against
/// the smallest-eps run, so that run's own difference row is zero and is
/// excluded from the fits. No rate is asserted, only observed decay.
RateReport eps_sweep(const SweepPlan& plan);

/// Closed-form manufactured pair (w*, u*) with the derivatives needed to
/// assemble the sources of both strong equations.
struct ManufacturedSolution {
  std::string name;
  SpaceTimeFn w, w_t, w_tt, lap_w, lap_w_t;
  SpaceTimeFn u, u_t, lap_u;

  /// w* = cos(pi x) e^{-t}, u* = cos(pi x)(1 + t) on [0, 1].
  static ManufacturedSolution cosine_decay();
  /// Time-constant pair in the span of the first two modes.
  static ManufacturedSolution steady_mode(double w_amp, double u_amp);
  /// w* = exp(cos(pi x)) e^{-t}, u* = exp(cos(pi x)) e^{-t/2}; analytic but
  /// outside every finite mode span, for spatial-refinement studies.
  static ManufacturedSolution smooth_analytic();
};

/// Substitute (w*, u*) into the strong equations of the regularized problem,
///   f = w*_tt - alpha lap w*_t - beta lap w* + u*_t
///   h = u*_t - lap u* + gamma_eps(u*) + g(u*) - w*_t,
/// solve on the ladder (dt or n refinement), and report the error against the
/// projected manufactured state at t_final. Requires a single-valued graph.
RateReport mms_verify(const ManufacturedSolution& manufactured,
                      const ProblemData& pd_template, const SolverConfig& cfg,
                      SweepPlan::Parameter ladder_parameter,
                      const std::vector<double>& ladder);

/// Forcing pair for a manufactured run (exposed for tests).
ForcingTerm manufactured_forcing(const ManufacturedSolution& ms,
                                 const ProblemData& pd);

}  // namespace pfs
