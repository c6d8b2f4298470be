#include "pfs/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace pfs {

namespace {

constexpr double kPi = std::numbers::pi;

/// Unit-L^2-norm smooth profile: the first nonconstant mode along axis 0.
SpatialFn perturbation_profile(const BoxDomain& domain) {
  const double l0 = domain.lengths[0];
  const double l1 = domain.lengths[1];
  const int dim = domain.dim;
  return [=](const std::array<double, 2>& x) {
    double v = std::sqrt(2.0 / l0) * std::cos(kPi * x[0] / l0);
    if (dim == 2) v /= std::sqrt(l1);
    return v;
  };
}

SpatialFn shifted(const SpatialFn& base, const SpatialFn& profile,
                  double scale) {
  return [=](const std::array<double, 2>& x) {
    return base(x) + scale * profile(x);
  };
}

ProblemData perturbed_problem(const ProblemData& base, double beta,
                              double scale) {
  ProblemData pd = base;
  pd.params.beta = beta;
  if (scale != 0.0) {
    const SpatialFn profile = perturbation_profile(base.domain);
    pd.init.w0 = shifted(base.init.w0, profile, scale);
    pd.init.v0 = shifted(base.init.v0, profile, scale);
    pd.init.u0 = shifted(base.init.u0, profile, scale);
    const SpaceTimeFn base_f = base.forcing.f;
    pd.forcing.f = [=](const std::array<double, 2>& x, double t) {
      const double b = base_f ? base_f(x, t) : 0.0;
      return b + scale * profile(x);
    };
  }
  return pd;
}

void run_levels(int n_levels, int threads,
                const std::function<void(int)>& work) {
  if (threads <= 1) {
    for (int i = 0; i < n_levels; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < std::min(threads, n_levels); ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_levels; i = next.fetch_add(1))
        work(i);
    });
  for (auto& th : pool) th.join();
}

void fit_all(RateReport& rep) {
  for (const std::string& name : difference_channel_names()) {
    std::vector<double> params, errs;
    for (size_t i = 0; i < rep.values.size(); ++i) {
      const auto& level = rep.levels[i];
      auto it = level.find(name);
      if (it == level.end() || !(it->second > 0.0)) continue;
      params.push_back(rep.values[i]);
      errs.push_back(it->second);
    }
    if (params.size() < 2) continue;
    const RateFit fit = fit_rate(params, errs);
    rep.slopes[name] = fit.slope;
    rep.fit_residuals[name] = fit.residual;
  }
}

}  // namespace

void SweepPlan::validate() const {
  if (values.size() < 3)
    throw std::invalid_argument("sweep: ladder needs at least 3 points");
  const bool increasing = parameter == Parameter::NModes;
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    const bool ok = increasing ? values[i] < values[i + 1]
                               : values[i] > values[i + 1];
    if (!ok)
      throw std::invalid_argument(
          "sweep: ladder must be strictly monotone");
  }
  for (double v : values)
    if (!(parameter == Parameter::Beta ? v >= 0.0 : v > 0.0))
      throw std::invalid_argument("sweep: ladder values out of range");
}

std::string to_string(SweepPlan::Parameter p) {
  switch (p) {
    case SweepPlan::Parameter::Beta: return "beta";
    case SweepPlan::Parameter::Eps: return "eps";
    case SweepPlan::Parameter::NModes: return "n_modes";
    case SweepPlan::Parameter::Dt: return "dt";
  }
  return "?";
}

RateFit fit_rate(const std::vector<double>& params,
                 const std::vector<double>& errors) {
  if (params.size() != errors.size() || params.size() < 2)
    throw std::invalid_argument("fit_rate: need matching arrays of size >= 2");
  const size_t n = params.size();
  std::vector<double> x(n), y(n);
  for (size_t i = 0; i < n; ++i) {
    if (!(params[i] > 0.0) || !(errors[i] > 0.0))
      throw std::invalid_argument("fit_rate: values must be positive");
    x[i] = std::log10(params[i]);
    y[i] = std::log10(errors[i]);
  }
  double xm = 0.0, ym = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(n);
  ym /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  RateFit fit;
  fit.slope = sxy / sxx;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - (ym + fit.slope * (x[i] - xm));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(n));
  fit.points = static_cast<int>(n);
  return fit;
}

RateReport beta_sweep(const SweepPlan& plan, Trajectory* reference_out) {
  plan.validate();
  if (plan.parameter != SweepPlan::Parameter::Beta)
    throw std::invalid_argument("beta_sweep: plan parameter must be beta");

  SpectralBasis basis(plan.base.domain, plan.config.n_modes);
  ProblemData ref_pd = plan.base;
  ref_pd.params.beta = 0.0;
  const Trajectory reference = solve(ref_pd, plan.config, basis);

  RateReport rep;
  rep.parameter = "beta";
  rep.values = plan.values;
  rep.levels.resize(plan.values.size());
  rep.failures.assign(plan.values.size(), "");

  run_levels(static_cast<int>(plan.values.size()), plan.threads, [&](int i) {
    const double beta = plan.values[static_cast<size_t>(i)];
    const double scale =
        plan.perturb_data ? std::pow(beta, plan.data_scale_exponent) : 0.0;
    try {
      const ProblemData pd = perturbed_problem(plan.base, beta, scale);
      const Trajectory traj = solve(pd, plan.config, basis);
      auto channels = difference_norms(traj, reference, basis);
      const MonitorReport mon = monitor(traj, pd, basis);
      for (const auto& [name, value] : mon.channels) channels[name] = value;
      rep.levels[static_cast<size_t>(i)] = std::move(channels);
    } catch (const std::exception& e) {
      rep.failures[static_cast<size_t>(i)] = e.what();
    }
  });

  fit_all(rep);
  const MonitorReport ref_mon = monitor(reference, ref_pd, basis);
  for (const auto& [name, value] : ref_mon.channels)
    rep.reference[name] = value;
  if (reference_out) *reference_out = reference;
  return rep;
}

RateReport beta_sweep(const SweepPlan& plan) { return beta_sweep(plan, nullptr); }

RateReport eps_sweep(const SweepPlan& plan) {
  plan.validate();
  if (plan.parameter != SweepPlan::Parameter::Eps)
    throw std::invalid_argument("eps_sweep: plan parameter must be eps");

  SpectralBasis basis(plan.base.domain, plan.config.n_modes);

  // One dt for every level, small enough for the sharpest regularization when
  // the graph has kinks, and an exact divisor of t_final.
  SolverConfig cfg = plan.config;
  if (!plan.base.graph.is_single_valued_smooth()) {
    const double eps_min = plan.values.back();
    const double dt_wanted = std::min(cfg.dt, 0.5 * eps_min);
    const double steps = std::ceil(plan.base.params.t_final / dt_wanted - 1e-9);
    cfg.dt = plan.base.params.t_final / steps;
  }

  const size_t n_levels = plan.values.size();
  std::vector<Trajectory> trajs(n_levels);
  RateReport rep;
  rep.parameter = "eps";
  rep.values = plan.values;
  rep.levels.resize(n_levels);
  rep.failures.assign(n_levels, "");

  run_levels(static_cast<int>(n_levels), plan.threads, [&](int i) {
    ProblemData pd = plan.base;
    pd.params.eps = plan.values[static_cast<size_t>(i)];
    try {
      trajs[static_cast<size_t>(i)] = solve(pd, cfg, basis);
    } catch (const std::exception& e) {
      rep.failures[static_cast<size_t>(i)] = e.what();
    }
  });

  const Trajectory& reference = trajs.back();
  for (size_t i = 0; i < n_levels; ++i) {
    if (!rep.failures[i].empty() || reference.states.empty()) continue;
    ProblemData pd = plan.base;
    pd.params.eps = plan.values[i];
    auto channels = difference_norms(trajs[i], reference, basis);
    const MonitorReport mon = monitor(trajs[i], pd, basis);
    for (const auto& [name, value] : mon.channels) channels[name] = value;
    rep.levels[i] = std::move(channels);
  }
  fit_all(rep);
  return rep;
}

ManufacturedSolution ManufacturedSolution::cosine_decay() {
  auto c = [](const std::array<double, 2>& x) { return std::cos(kPi * x[0]); };
  ManufacturedSolution ms;
  ms.name = "cosine_decay";
  ms.w = [=](const std::array<double, 2>& x, double t) { return c(x) * std::exp(-t); };
  ms.w_t = [=](const std::array<double, 2>& x, double t) { return -c(x) * std::exp(-t); };
  ms.w_tt = [=](const std::array<double, 2>& x, double t) { return c(x) * std::exp(-t); };
  ms.lap_w = [=](const std::array<double, 2>& x, double t) {
    return -kPi * kPi * c(x) * std::exp(-t);
  };
  ms.lap_w_t = [=](const std::array<double, 2>& x, double t) {
    return kPi * kPi * c(x) * std::exp(-t);
  };
  ms.u = [=](const std::array<double, 2>& x, double t) { return c(x) * (1.0 + t); };
  ms.u_t = [=](const std::array<double, 2>& x, double) { return c(x); };
  ms.lap_u = [=](const std::array<double, 2>& x, double t) {
    return -kPi * kPi * c(x) * (1.0 + t);
  };
  return ms;
}

ManufacturedSolution ManufacturedSolution::steady_mode(double w_amp,
                                                       double u_amp) {
  auto c = [](const std::array<double, 2>& x) { return std::cos(kPi * x[0]); };
  auto zero = [](const std::array<double, 2>&, double) { return 0.0; };
  ManufacturedSolution ms;
  ms.name = "steady_mode";
  ms.w = [=](const std::array<double, 2>& x, double) { return w_amp * c(x); };
  ms.w_t = zero;
  ms.w_tt = zero;
  ms.lap_w = [=](const std::array<double, 2>& x, double) {
    return -kPi * kPi * w_amp * c(x);
  };
  ms.lap_w_t = zero;
  ms.u = [=](const std::array<double, 2>& x, double) { return u_amp * c(x); };
  ms.u_t = zero;
  ms.lap_u = [=](const std::array<double, 2>& x, double) {
    return -kPi * kPi * u_amp * c(x);
  };
  return ms;
}

ManufacturedSolution ManufacturedSolution::smooth_analytic() {
  auto f = [](const std::array<double, 2>& x) {
    return std::exp(std::cos(kPi * x[0]));
  };
  auto lap_f = [](const std::array<double, 2>& x) {
    const double s = std::sin(kPi * x[0]);
    const double c = std::cos(kPi * x[0]);
    return kPi * kPi * std::exp(c) * (s * s - c);
  };
  ManufacturedSolution ms;
  ms.name = "smooth_analytic";
  ms.w = [=](const std::array<double, 2>& x, double t) { return f(x) * std::exp(-t); };
  ms.w_t = [=](const std::array<double, 2>& x, double t) { return -f(x) * std::exp(-t); };
  ms.w_tt = [=](const std::array<double, 2>& x, double t) { return f(x) * std::exp(-t); };
  ms.lap_w = [=](const std::array<double, 2>& x, double t) {
    return lap_f(x) * std::exp(-t);
  };
  ms.lap_w_t = [=](const std::array<double, 2>& x, double t) {
    return -lap_f(x) * std::exp(-t);
  };
  ms.u = [=](const std::array<double, 2>& x, double t) {
    return f(x) * std::exp(-0.5 * t);
  };
  ms.u_t = [=](const std::array<double, 2>& x, double t) {
    return -0.5 * f(x) * std::exp(-0.5 * t);
  };
  ms.lap_u = [=](const std::array<double, 2>& x, double t) {
    return lap_f(x) * std::exp(-0.5 * t);
  };
  return ms;
}

ForcingTerm manufactured_forcing(const ManufacturedSolution& ms,
                                 const ProblemData& pd) {
  const double alpha = pd.params.alpha;
  const double beta = pd.params.beta;
  const double eps = pd.params.eps;
  const MonotoneGraph graph = pd.graph;
  const auto g = pd.nl.g;
  ForcingTerm forcing;
  forcing.f = [=](const std::array<double, 2>& x, double t) {
    return ms.w_tt(x, t) - alpha * ms.lap_w_t(x, t) - beta * ms.lap_w(x, t) +
           ms.u_t(x, t);
  };
  forcing.h = [=](const std::array<double, 2>& x, double t) {
    const double u = ms.u(x, t);
    return ms.u_t(x, t) - ms.lap_u(x, t) + graph.yosida(eps, u) + g(u) -
           ms.w_t(x, t);
  };
  return forcing;
}

RateReport mms_verify(const ManufacturedSolution& ms,
                      const ProblemData& pd_template, const SolverConfig& cfg,
                      SweepPlan::Parameter ladder_parameter,
                      const std::vector<double>& ladder) {
  if (!pd_template.graph.is_single_valued_smooth())
    throw std::invalid_argument(
        "mms_verify: manufactured runs need a single-valued smooth graph");
  if (ladder_parameter != SweepPlan::Parameter::Dt &&
      ladder_parameter != SweepPlan::Parameter::NModes)
    throw std::invalid_argument("mms_verify: ladder must refine dt or n_modes");
  if (ladder.size() < 2)
    throw std::invalid_argument("mms_verify: ladder needs at least 2 points");

  ProblemData pd = pd_template;
  pd.forcing = manufactured_forcing(ms, pd_template);
  pd.init.w0 = [&ms](const std::array<double, 2>& x) { return ms.w(x, 0.0); };
  pd.init.v0 = [&ms](const std::array<double, 2>& x) { return ms.w_t(x, 0.0); };
  pd.init.u0 = [&ms](const std::array<double, 2>& x) { return ms.u(x, 0.0); };

  RateReport rep;
  rep.parameter = to_string(ladder_parameter);
  rep.values = ladder;
  rep.levels.resize(ladder.size());
  rep.failures.assign(ladder.size(), "");

  for (size_t i = 0; i < ladder.size(); ++i) {
    SolverConfig level_cfg = cfg;
    if (ladder_parameter == SweepPlan::Parameter::Dt) {
      level_cfg.dt = ladder[i];
    } else {
      level_cfg.n_modes[0] = static_cast<int>(ladder[i]);
      if (pd.domain.dim == 2) level_cfg.n_modes[1] = static_cast<int>(ladder[i]);
    }
    try {
      SpectralBasis basis(pd.domain, level_cfg.n_modes);
      const Trajectory traj = solve(pd, level_cfg, basis);
      const State& last = traj.back();
      const double T = last.t;
      auto at_T = [&](const SpaceTimeFn& fn) {
        return basis.project(basis.sample(
            [&](const std::array<double, 2>& x) { return fn(x, T); }));
      };
      const double err_w = (last.w - at_T(ms.w)).norm();
      const double err_v = (last.v - at_T(ms.w_t)).norm();
      const double err_u = (last.u - at_T(ms.u)).norm();
      rep.levels[i] = {{"mms_error", err_w + err_v + err_u},
                       {"mms_error_w", err_w},
                       {"mms_error_v", err_v},
                       {"mms_error_u", err_u}};
    } catch (const std::exception& e) {
      rep.failures[i] = e.what();
    }
  }

  for (const std::string name :
       {"mms_error", "mms_error_w", "mms_error_v", "mms_error_u"}) {
    std::vector<double> params, errs;
    for (size_t i = 0; i < ladder.size(); ++i) {
      auto it = rep.levels[i].find(name);
      if (it == rep.levels[i].end() || !(it->second > 0.0)) continue;
      params.push_back(ladder[i]);
      errs.push_back(it->second);
    }
    if (params.size() < 2) continue;
    const RateFit fit = fit_rate(params, errs);
    rep.slopes[name] = fit.slope;
    rep.fit_residuals[name] = fit.residual;
  }
  return rep;
}

}  // namespace pfs
