#include "pfs/runner.hpp"

#include "pfs/checks.hpp"
#include "pfs/report_io.hpp"
#include "pfs/snapshot.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>

namespace pfs {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_error_json(const std::string& out_dir, const std::string& kind,
                      const std::string& what, double time) {
  json j;
  j["error"] = kind;
  j["message"] = what;
  if (std::isfinite(time)) j["time"] = time;
  write_text_file(join(out_dir, "error.json"), j.dump(2) + "\n");
}

bool levels_finite(const RateReport& report) {
  for (const auto& level : report.levels)
    for (const auto& [name, value] : level)
      if (!std::isfinite(value)) return false;
  for (const auto& f : report.failures)
    if (!f.empty()) return false;
  return true;
}

// Final-state profiles on the quadrature grid, for plotting with any
// external tool.
std::string final_fields_csv(const Trajectory& traj, const ProblemData& pd,
                             const SpectralBasis& basis) {
  const State& last = traj.back();
  const GridFunction w = basis.to_grid(last.w);
  const GridFunction theta = basis.to_grid(last.v);
  const GridFunction u = basis.to_grid(last.u);
  const GridFunction xi = xi_on_grid(last, pd, basis);
  std::string out = "x,y,w,theta,u,xi\n";
  for (int q = 0; q < basis.grid_size(); ++q) {
    const auto node = basis.node(q);
    out += csv_number(node[0]) + "," + csv_number(node[1]) + "," +
           csv_number(w[q]) + "," + csv_number(theta[q]) + "," +
           csv_number(u[q]) + "," + csv_number(xi[q]) + "\n";
  }
  return out;
}

RunOutcome run_solve(const RunConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  const ProblemData pd = make_problem_data(config);
  const SolverConfig cfg = make_solver_config(config);
  SpectralBasis basis(pd.domain, cfg.n_modes);
  try {
    const Trajectory traj = solve(pd, cfg, basis);
    write_snapshot(join(out_dir, "solution.snap"), traj, pd.domain);
    const MonitorReport rep = monitor(traj, pd, basis);
    write_text_file(join(out_dir, "monitor.csv"), monitor_to_csv(rep));
    write_text_file(join(out_dir, "monitor.json"), monitor_to_json(rep));
    write_text_file(join(out_dir, "energy.csv"), energy_trace_to_csv(rep));
    write_text_file(join(out_dir, "fields_final.csv"),
                    final_fields_csv(traj, pd, basis));
    outcome.lines.push_back("solve: " + std::to_string(traj.size()) +
                            " states written to solution.snap");
    if (!rep.all_finite()) {
      outcome.lines.push_back("solve: non-finite monitor channels");
      outcome.exit_code = 1;
    }
  } catch (const SolverError& e) {
    write_error_json(out_dir, "solver_failure", e.what(), e.time());
    outcome.lines.push_back(std::string("solve failed: ") + e.what());
    outcome.exit_code = 1;
  }
  return outcome;
}

RunOutcome run_sweep(const RunConfig& config, const std::string& out_dir,
                     int threads, bool beta) {
  RunOutcome outcome;
  RunConfig cfg = config;
  cfg.sweep_parameter = beta ? "beta" : "eps";
  const SweepPlan plan = make_sweep_plan(cfg, threads);
  const RateReport report = beta ? beta_sweep(plan) : eps_sweep(plan);
  const std::string stem = beta ? "sweep_beta" : "sweep_eps";
  write_text_file(join(out_dir, stem + ".json"), rate_report_to_json(report));
  write_text_file(join(out_dir, stem + "_levels.csv"),
                  rate_report_to_csv(report));
  for (size_t i = 0; i < report.values.size(); ++i)
    if (!report.failures[i].empty())
      outcome.lines.push_back(stem + " level " + std::to_string(i) +
                              " failed: " + report.failures[i]);
  auto it = report.slopes.find("err1_bundle");
  if (it != report.slopes.end())
    outcome.lines.push_back(stem + ": err1_bundle slope = " +
                            std::to_string(it->second));
  outcome.exit_code = levels_finite(report) ? 0 : 1;
  return outcome;
}

RunOutcome run_mms(const RunConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  const ProblemData pd = make_problem_data(config);
  const SolverConfig cfg = make_solver_config(config);
  const ManufacturedSolution ms = make_manufactured(config);
  const auto ladder_parameter = config.mms_ladder == "n_modes"
                                    ? SweepPlan::Parameter::NModes
                                    : SweepPlan::Parameter::Dt;
  const RateReport report =
      mms_verify(ms, pd, cfg, ladder_parameter, config.mms_values);
  write_text_file(join(out_dir, "mms.json"), rate_report_to_json(report));
  write_text_file(join(out_dir, "mms_levels.csv"), rate_report_to_csv(report));
  auto it = report.slopes.find("mms_error");
  if (it != report.slopes.end())
    outcome.lines.push_back("mms: fitted order = " + std::to_string(it->second));
  outcome.exit_code = levels_finite(report) ? 0 : 1;
  return outcome;
}

RunOutcome run_check(const RunConfig& config, const std::string& out_dir) {
  RunOutcome outcome;
  const auto results = run_property_checks(config);
  json j = json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    outcome.lines.push_back(std::string(r.passed ? "[PASS] " : "[FAIL] ") +
                            r.name + " — " + r.detail);
    j.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  write_text_file(join(out_dir, "check.json"), j.dump(2) + "\n");
  outcome.exit_code = all ? 0 : 1;
  return outcome;
}

}  // namespace

RunOutcome run_subcommand(const RunConfig& config, const std::string& subcommand,
                          const std::string& out_dir, int threads) {
  fs::create_directories(out_dir);
  if (subcommand == "solve") return run_solve(config, out_dir);
  if (subcommand == "sweep-beta") return run_sweep(config, out_dir, threads, true);
  if (subcommand == "sweep-eps") return run_sweep(config, out_dir, threads, false);
  if (subcommand == "mms") return run_mms(config, out_dir);
  if (subcommand == "check") return run_check(config, out_dir);
  return {2, {"unknown subcommand: " + subcommand}};
}

}  // namespace pfs
