#pragma once

#include "pfs/asymptotics.hpp"
#include "pfs/problem.hpp"
#include "pfs/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pfs {

/// Declarative description of one experiment. Plain data with defaults for
/// every key; see the README for the config grammar and the defaults table.
struct RunConfig {
  // [domain]
  int dim = 1;
  double length_x = 1.0;
  double length_y = 1.0;

  // [basis]
  int n_modes_x = 16;
  int n_modes_y = 1;

  // [params]
  double alpha = 1.0;
  double beta = 0.1;
  double eps = 1e-2;
  double t_final = 0.25;

  // [graph]
  std::string graph_kind = "double_obstacle";
  double graph_lower = -1.0;
  double graph_upper = 1.0;
  int graph_exponent = 3;
  double graph_slope = 1.0;

  // [nonlinearity]
  std::string nonlinearity = "double_well";

  // [forcing]
  std::string forcing_kind = "zero";
  double forcing_value = 0.0;
  double forcing_amplitude = 0.0;
  int forcing_mode = 1;
  double forcing_decay = 1.0;

  // [initial]
  struct Field {
    std::string preset = "constant";
    double value = 0.0;
    double amplitude = 0.5;
    int mode = 1;
    int mode_y = 0;
    double center = 0.5;
    double width = 0.1;
    bool operator==(const Field&) const = default;
  };
  Field w0{};
  Field v0{};
  Field u0{.preset = "cosine"};

  // [solver]
  double dt = 1e-3;
  std::string scheme = "imex_euler";
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  bool freeze_thermal = false;

  // [sweep]
  std::string sweep_parameter = "beta";
  std::vector<double> sweep_values = {1e-1, 2.5e-2, 6.25e-3, 1.5625e-3};
  bool sweep_perturb = true;
  double sweep_scale_exponent = 1.0;

  // [mms]
  std::string mms_preset = "cosine_decay";
  std::string mms_ladder = "dt";
  std::vector<double> mms_values = {1.0 / 40, 1.0 / 80, 1.0 / 160, 1.0 / 320,
                                    1.0 / 640};

  // [output]
  std::string output_dir = "out";

  bool operator==(const RunConfig&) const = default;
};

enum class ConfigErrorCode {
  Syntax,
  UnknownSection,
  UnknownKey,
  BadValue,
  UnknownGraph,
  UnknownPreset,
  MissingKey,
};

std::string to_string(ConfigErrorCode code);

struct ConfigError {
  ConfigErrorCode code = ConfigErrorCode::Syntax;
  int line = 0;  // 1-based; 0 when the offending key was never written
  std::string message;
};

struct ParseResult {
  std::optional<RunConfig> config;
  std::vector<ConfigError> errors;

  bool ok() const { return config.has_value() && errors.empty(); }
};

/// Parse the INI-style key = value grammar (sections in brackets, '#'
/// comments). All errors are collected with their line numbers; the config is
/// returned only when there are none.
ParseResult parse_config(const std::string& text);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

/// Builders from a validated config.
BoxDomain make_domain(const RunConfig& config);
SolverConfig make_solver_config(const RunConfig& config);
ProblemData make_problem_data(const RunConfig& config);
SweepPlan make_sweep_plan(const RunConfig& config, int threads);
ManufacturedSolution make_manufactured(const RunConfig& config);

}  // namespace pfs
