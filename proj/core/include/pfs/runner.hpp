#pragma once

#include "pfs/config.hpp"

#include <string>
#include <vector>

namespace pfs {

struct RunOutcome {
  int exit_code = 0;
  std::vector<std::string> lines;  // human-readable log, printed by the CLI
};

/// Execute one subcommand against a validated config, writing all artifacts
/// under out_dir:
///   solve      -> solution.snap, monitor.csv, monitor.json, energy.csv
///   sweep-beta -> sweep_beta.json, sweep_beta_levels.csv
///   sweep-eps  -> sweep_eps.json, sweep_eps_levels.csv
///   mms        -> mms.json, mms_levels.csv
///   check      -> check.json (plus one pass/fail line per property)
/// Exit code 0 iff no channel is NaN and every requested gate passed; solver
/// failures produce error.json with a machine-readable description.
RunOutcome run_subcommand(const RunConfig& config, const std::string& subcommand,
                          const std::string& out_dir, int threads);

}  // namespace pfs
