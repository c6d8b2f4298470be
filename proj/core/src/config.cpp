#include "pfs/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace pfs {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Raw {
  std::string section, key, value;
  int line = 0;
};

bool parse_double(const std::string& s, double& out) {
  try {
    size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& s, int& out) {
  try {
    size_t pos = 0;
    out = std::stoi(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true") { out = true; return true; }
  if (s == "false") { out = false; return true; }
  return false;
}

bool parse_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!parse_double(trim(item), v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

std::string list_to_string(const std::vector<double>& values) {
  std::string s;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += fmt_double(values[i]);
  }
  return s;
}

}  // namespace

std::string to_string(ConfigErrorCode code) {
  switch (code) {
    case ConfigErrorCode::Syntax: return "syntax";
    case ConfigErrorCode::UnknownSection: return "unknown_section";
    case ConfigErrorCode::UnknownKey: return "unknown_key";
    case ConfigErrorCode::BadValue: return "bad_value";
    case ConfigErrorCode::UnknownGraph: return "unknown_graph";
    case ConfigErrorCode::UnknownPreset: return "unknown_preset";
    case ConfigErrorCode::MissingKey: return "missing_key";
  }
  return "?";
}

ParseResult parse_config(const std::string& text) {
  ParseResult result;
  std::vector<ConfigError>& errors = result.errors;
  RunConfig cfg;

  std::vector<Raw> entries;
  std::set<std::string> sections_seen;
  {
    std::stringstream ss(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(ss, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          errors.push_back({ConfigErrorCode::Syntax, line_no,
                            "unterminated section header"});
          continue;
        }
        section = trim(line.substr(1, line.size() - 2));
        sections_seen.insert(section);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        errors.push_back(
            {ConfigErrorCode::Syntax, line_no, "expected key = value"});
        continue;
      }
      Raw r;
      r.section = section;
      r.key = trim(line.substr(0, eq));
      r.value = trim(line.substr(eq + 1));
      r.line = line_no;
      if (r.key.empty()) {
        errors.push_back({ConfigErrorCode::Syntax, line_no, "empty key"});
        continue;
      }
      entries.push_back(std::move(r));
    }
  }

  const std::set<std::string> known_sections = {
      "domain", "basis",  "params", "graph", "nonlinearity",
      "forcing", "initial", "solver", "sweep", "mms", "output"};
  for (const std::string& s : sections_seen)
    if (!known_sections.count(s))
      errors.push_back({ConfigErrorCode::UnknownSection, 0,
                        "unknown section [" + s + "]"});

  std::map<std::string, int> key_lines;

  auto bad = [&](const Raw& r) {
    errors.push_back({ConfigErrorCode::BadValue, r.line,
                      "invalid value for " + r.section + "." + r.key});
  };
  auto set_d = [&](const Raw& r, double& target) {
    if (!parse_double(r.value, target)) bad(r);
  };
  auto set_i = [&](const Raw& r, int& target) {
    if (!parse_int(r.value, target)) bad(r);
  };
  auto set_b = [&](const Raw& r, bool& target) {
    if (!parse_bool(r.value, target)) bad(r);
  };
  auto set_l = [&](const Raw& r, std::vector<double>& target) {
    if (!parse_list(r.value, target)) bad(r);
  };

  auto apply_field = [&](const Raw& r, const std::string& prefix,
                         RunConfig::Field& f) -> bool {
    if (r.key == prefix) { f.preset = r.value; return true; }
    if (r.key == prefix + "_value") { set_d(r, f.value); return true; }
    if (r.key == prefix + "_amplitude") { set_d(r, f.amplitude); return true; }
    if (r.key == prefix + "_mode") { set_i(r, f.mode); return true; }
    if (r.key == prefix + "_mode_y") { set_i(r, f.mode_y); return true; }
    if (r.key == prefix + "_center") { set_d(r, f.center); return true; }
    if (r.key == prefix + "_width") { set_d(r, f.width); return true; }
    return false;
  };

  for (const Raw& r : entries) {
    if (!known_sections.count(r.section)) continue;  // reported above
    key_lines[r.section + "." + r.key] = r.line;
    bool known = true;
    if (r.section == "domain") {
      if (r.key == "dim") set_i(r, cfg.dim);
      else if (r.key == "length_x") set_d(r, cfg.length_x);
      else if (r.key == "length_y") set_d(r, cfg.length_y);
      else known = false;
    } else if (r.section == "basis") {
      if (r.key == "n_modes_x") set_i(r, cfg.n_modes_x);
      else if (r.key == "n_modes_y") set_i(r, cfg.n_modes_y);
      else known = false;
    } else if (r.section == "params") {
      if (r.key == "alpha") set_d(r, cfg.alpha);
      else if (r.key == "beta") set_d(r, cfg.beta);
      else if (r.key == "eps") set_d(r, cfg.eps);
      else if (r.key == "t_final") set_d(r, cfg.t_final);
      else known = false;
    } else if (r.section == "graph") {
      if (r.key == "kind") cfg.graph_kind = r.value;
      else if (r.key == "lower") set_d(r, cfg.graph_lower);
      else if (r.key == "upper") set_d(r, cfg.graph_upper);
      else if (r.key == "exponent") set_i(r, cfg.graph_exponent);
      else if (r.key == "slope") set_d(r, cfg.graph_slope);
      else known = false;
    } else if (r.section == "nonlinearity") {
      if (r.key == "kind") cfg.nonlinearity = r.value;
      else known = false;
    } else if (r.section == "forcing") {
      if (r.key == "kind") cfg.forcing_kind = r.value;
      else if (r.key == "value") set_d(r, cfg.forcing_value);
      else if (r.key == "amplitude") set_d(r, cfg.forcing_amplitude);
      else if (r.key == "mode") set_i(r, cfg.forcing_mode);
      else if (r.key == "decay") set_d(r, cfg.forcing_decay);
      else known = false;
    } else if (r.section == "initial") {
      known = apply_field(r, "w0", cfg.w0) || apply_field(r, "v0", cfg.v0) ||
              apply_field(r, "u0", cfg.u0);
    } else if (r.section == "solver") {
      if (r.key == "dt") set_d(r, cfg.dt);
      else if (r.key == "scheme") cfg.scheme = r.value;
      else if (r.key == "newton_tol") set_d(r, cfg.newton_tol);
      else if (r.key == "newton_max_iter") set_i(r, cfg.newton_max_iter);
      else if (r.key == "freeze_thermal") set_b(r, cfg.freeze_thermal);
      else known = false;
    } else if (r.section == "sweep") {
      if (r.key == "parameter") cfg.sweep_parameter = r.value;
      else if (r.key == "values") set_l(r, cfg.sweep_values);
      else if (r.key == "perturb") set_b(r, cfg.sweep_perturb);
      else if (r.key == "scale_exponent") set_d(r, cfg.sweep_scale_exponent);
      else known = false;
    } else if (r.section == "mms") {
      if (r.key == "preset") cfg.mms_preset = r.value;
      else if (r.key == "ladder") cfg.mms_ladder = r.value;
      else if (r.key == "values") set_l(r, cfg.mms_values);
      else known = false;
    } else if (r.section == "output") {
      if (r.key == "directory") cfg.output_dir = r.value;
      else known = false;
    }
    if (!known)
      errors.push_back({ConfigErrorCode::UnknownKey, r.line,
                        "unknown key " + r.section + "." + r.key});
  }

  // Semantic validation; line numbers point at the offending key when it was
  // written explicitly.
  auto line_of = [&](const std::string& path) {
    auto it = key_lines.find(path);
    return it == key_lines.end() ? 0 : it->second;
  };
  auto semantic = [&](ConfigErrorCode code, const std::string& path,
                      const std::string& message) {
    errors.push_back({code, line_of(path), message});
  };

  if (cfg.dim != 1 && cfg.dim != 2)
    semantic(ConfigErrorCode::BadValue, "domain.dim", "dim must be 1 or 2");
  if (!(cfg.length_x > 0.0))
    semantic(ConfigErrorCode::BadValue, "domain.length_x",
             "length_x must be > 0");
  if (cfg.dim == 2 && !(cfg.length_y > 0.0))
    semantic(ConfigErrorCode::BadValue, "domain.length_y",
             "length_y must be > 0");
  if (cfg.n_modes_x < 1)
    semantic(ConfigErrorCode::BadValue, "basis.n_modes_x",
             "n_modes_x must be >= 1");
  if (cfg.dim == 2 && cfg.n_modes_y < 1)
    semantic(ConfigErrorCode::BadValue, "basis.n_modes_y",
             "n_modes_y must be >= 1");
  if (!(cfg.alpha > 0.0))
    semantic(ConfigErrorCode::BadValue, "params.alpha", "alpha must be > 0");
  if (cfg.beta < 0.0)
    semantic(ConfigErrorCode::BadValue, "params.beta", "beta must be >= 0");
  if (!(cfg.eps > 0.0 && cfg.eps <= 1.0))
    semantic(ConfigErrorCode::BadValue, "params.eps",
             "eps must be in (0, 1]");
  if (!(cfg.t_final > 0.0))
    semantic(ConfigErrorCode::BadValue, "params.t_final",
             "t_final must be > 0");
  if (!(cfg.dt > 0.0))
    semantic(ConfigErrorCode::BadValue, "solver.dt", "dt must be > 0");
  if (!(cfg.newton_tol > 0.0))
    semantic(ConfigErrorCode::BadValue, "solver.newton_tol",
             "newton_tol must be > 0");
  if (cfg.newton_max_iter < 1)
    semantic(ConfigErrorCode::BadValue, "solver.newton_max_iter",
             "newton_max_iter must be >= 1");
  if (cfg.scheme != "imex_euler" && cfg.scheme != "imex_cn")
    semantic(ConfigErrorCode::BadValue, "solver.scheme",
             "scheme must be imex_euler or imex_cn");

  const std::set<std::string> graphs = {"double_obstacle", "power", "linear",
                                        "sinh", "zero"};
  if (!graphs.count(cfg.graph_kind)) {
    semantic(ConfigErrorCode::UnknownGraph, "graph.kind",
             "unknown graph name: " + cfg.graph_kind);
  } else if (cfg.graph_kind == "double_obstacle") {
    const bool has_lower = key_lines.count("graph.lower") > 0;
    const bool has_upper = key_lines.count("graph.upper") > 0;
    if (has_lower != has_upper)
      semantic(ConfigErrorCode::MissingKey,
               has_lower ? "graph.lower" : "graph.upper",
               "graph.lower and graph.upper must be given together");
    if (!(cfg.graph_lower < cfg.graph_upper) || cfg.graph_lower > 0.0 ||
        cfg.graph_upper < 0.0)
      semantic(ConfigErrorCode::BadValue, "graph.lower",
               "double obstacle needs lower <= 0 <= upper, lower < upper");
  } else if (cfg.graph_kind == "power") {
    if (cfg.graph_exponent < 1 || cfg.graph_exponent % 2 == 0)
      semantic(ConfigErrorCode::BadValue, "graph.exponent",
               "power exponent must be odd and >= 1");
  } else if (cfg.graph_kind == "linear") {
    if (cfg.graph_slope < 0.0)
      semantic(ConfigErrorCode::BadValue, "graph.slope",
               "linear slope must be >= 0");
  }

  const std::set<std::string> nls = {"zero", "double_well", "identity"};
  if (!nls.count(cfg.nonlinearity))
    semantic(ConfigErrorCode::UnknownPreset, "nonlinearity.kind",
             "unknown nonlinearity preset: " + cfg.nonlinearity);

  const std::set<std::string> forcings = {"zero", "constant", "cosine"};
  if (!forcings.count(cfg.forcing_kind))
    semantic(ConfigErrorCode::UnknownPreset, "forcing.kind",
             "unknown forcing preset: " + cfg.forcing_kind);
  else if (cfg.forcing_kind == "cosine" && !(cfg.forcing_decay > 0.0))
    semantic(ConfigErrorCode::BadValue, "forcing.decay",
             "forcing decay must be > 0");

  const std::set<std::string> presets = {"constant", "cosine", "tanh_front"};
  auto check_field = [&](const RunConfig::Field& f, const std::string& name) {
    if (!presets.count(f.preset))
      semantic(ConfigErrorCode::UnknownPreset, "initial." + name,
               "unknown initial preset: " + f.preset);
    else if (f.preset == "tanh_front" && !(f.width > 0.0))
      semantic(ConfigErrorCode::BadValue, "initial." + name + "_width",
               name + "_width must be > 0");
  };
  check_field(cfg.w0, "w0");
  check_field(cfg.v0, "v0");
  check_field(cfg.u0, "u0");

  if (cfg.sweep_parameter != "beta" && cfg.sweep_parameter != "eps")
    semantic(ConfigErrorCode::BadValue, "sweep.parameter",
             "sweep parameter must be beta or eps");
  if (sections_seen.count("sweep") && !key_lines.count("sweep.values"))
    errors.push_back({ConfigErrorCode::MissingKey, 0,
                      "section [sweep] requires the values key"});
  if (cfg.sweep_values.size() < 3)
    semantic(ConfigErrorCode::BadValue, "sweep.values",
             "sweep needs at least 3 ladder values");
  for (size_t i = 0; i + 1 < cfg.sweep_values.size(); ++i)
    if (!(cfg.sweep_values[i] > cfg.sweep_values[i + 1])) {
      semantic(ConfigErrorCode::BadValue, "sweep.values",
               "sweep values must be strictly decreasing");
      break;
    }
  for (double v : cfg.sweep_values) {
    const bool ok = cfg.sweep_parameter == "eps" ? (v > 0.0 && v <= 1.0)
                                                 : v >= 0.0;
    if (!ok) {
      semantic(ConfigErrorCode::BadValue, "sweep.values",
               cfg.sweep_parameter == "eps"
                   ? "eps ladder values must be in (0, 1]"
                   : "beta ladder values must be >= 0");
      break;
    }
  }
  if (!(cfg.sweep_scale_exponent > 0.0))
    semantic(ConfigErrorCode::BadValue, "sweep.scale_exponent",
             "scale_exponent must be > 0");

  const std::set<std::string> mms_presets = {"cosine_decay", "steady_mode",
                                             "smooth_analytic"};
  if (!mms_presets.count(cfg.mms_preset))
    semantic(ConfigErrorCode::UnknownPreset, "mms.preset",
             "unknown mms preset: " + cfg.mms_preset);
  if (cfg.mms_ladder != "dt" && cfg.mms_ladder != "n_modes")
    semantic(ConfigErrorCode::BadValue, "mms.ladder",
             "mms ladder must be dt or n_modes");
  if (sections_seen.count("mms") && !key_lines.count("mms.values"))
    errors.push_back({ConfigErrorCode::MissingKey, 0,
                      "section [mms] requires the values key"});
  if (cfg.mms_values.size() < 2)
    semantic(ConfigErrorCode::BadValue, "mms.values",
             "mms needs at least 2 ladder values");

  if (errors.empty()) result.config = cfg;
  return result;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[domain]\n"
     << "dim = " << c.dim << "\n"
     << "length_x = " << fmt_double(c.length_x) << "\n"
     << "length_y = " << fmt_double(c.length_y) << "\n\n";
  os << "[basis]\n"
     << "n_modes_x = " << c.n_modes_x << "\n"
     << "n_modes_y = " << c.n_modes_y << "\n\n";
  os << "[params]\n"
     << "alpha = " << fmt_double(c.alpha) << "\n"
     << "beta = " << fmt_double(c.beta) << "\n"
     << "eps = " << fmt_double(c.eps) << "\n"
     << "t_final = " << fmt_double(c.t_final) << "\n\n";
  os << "[graph]\n"
     << "kind = " << c.graph_kind << "\n"
     << "lower = " << fmt_double(c.graph_lower) << "\n"
     << "upper = " << fmt_double(c.graph_upper) << "\n"
     << "exponent = " << c.graph_exponent << "\n"
     << "slope = " << fmt_double(c.graph_slope) << "\n\n";
  os << "[nonlinearity]\n"
     << "kind = " << c.nonlinearity << "\n\n";
  os << "[forcing]\n"
     << "kind = " << c.forcing_kind << "\n"
     << "value = " << fmt_double(c.forcing_value) << "\n"
     << "amplitude = " << fmt_double(c.forcing_amplitude) << "\n"
     << "mode = " << c.forcing_mode << "\n"
     << "decay = " << fmt_double(c.forcing_decay) << "\n\n";
  os << "[initial]\n";
  auto field = [&](const std::string& name, const RunConfig::Field& f) {
    os << name << " = " << f.preset << "\n"
       << name << "_value = " << fmt_double(f.value) << "\n"
       << name << "_amplitude = " << fmt_double(f.amplitude) << "\n"
       << name << "_mode = " << f.mode << "\n"
       << name << "_mode_y = " << f.mode_y << "\n"
       << name << "_center = " << fmt_double(f.center) << "\n"
       << name << "_width = " << fmt_double(f.width) << "\n";
  };
  field("w0", c.w0);
  field("v0", c.v0);
  field("u0", c.u0);
  os << "\n[solver]\n"
     << "dt = " << fmt_double(c.dt) << "\n"
     << "scheme = " << c.scheme << "\n"
     << "newton_tol = " << fmt_double(c.newton_tol) << "\n"
     << "newton_max_iter = " << c.newton_max_iter << "\n"
     << "freeze_thermal = " << (c.freeze_thermal ? "true" : "false") << "\n\n";
  os << "[sweep]\n"
     << "parameter = " << c.sweep_parameter << "\n"
     << "values = " << list_to_string(c.sweep_values) << "\n"
     << "perturb = " << (c.sweep_perturb ? "true" : "false") << "\n"
     << "scale_exponent = " << fmt_double(c.sweep_scale_exponent) << "\n\n";
  os << "[mms]\n"
     << "preset = " << c.mms_preset << "\n"
     << "ladder = " << c.mms_ladder << "\n"
     << "values = " << list_to_string(c.mms_values) << "\n\n";
  os << "[output]\n"
     << "directory = " << c.output_dir << "\n";
  return os.str();
}

BoxDomain make_domain(const RunConfig& c) {
  return BoxDomain{c.dim, {c.length_x, c.length_y}};
}

SolverConfig make_solver_config(const RunConfig& c) {
  SolverConfig cfg;
  cfg.n_modes = {c.n_modes_x, c.dim == 2 ? c.n_modes_y : 1};
  cfg.dt = c.dt;
  cfg.scheme = c.scheme == "imex_cn" ? Scheme::ImexCn : Scheme::ImexEuler;
  cfg.newton_tol = c.newton_tol;
  cfg.newton_max_iter = c.newton_max_iter;
  cfg.freeze_thermal = c.freeze_thermal;
  return cfg;
}

namespace {

SpatialFn make_field(const BoxDomain& domain, const RunConfig::Field& f) {
  if (f.preset == "constant") return InitialData::constant(f.value);
  if (f.preset == "cosine")
    return InitialData::cosine(domain, f.amplitude, {f.mode, f.mode_y});
  return InitialData::tanh_front(f.amplitude, f.center, f.width);
}

}  // namespace

ProblemData make_problem_data(const RunConfig& c) {
  ProblemData pd;
  pd.domain = make_domain(c);
  pd.params = {c.alpha, c.beta, c.eps, c.t_final};

  if (c.graph_kind == "double_obstacle")
    pd.graph = MonotoneGraph::double_obstacle(c.graph_lower, c.graph_upper);
  else if (c.graph_kind == "power")
    pd.graph = MonotoneGraph::power(c.graph_exponent);
  else if (c.graph_kind == "linear")
    pd.graph = MonotoneGraph::linear(c.graph_slope);
  else if (c.graph_kind == "sinh")
    pd.graph = MonotoneGraph::smooth(
        [](double s) { return std::sinh(s); },
        [](double s) { return std::cosh(s); },
        [](double s) { return std::cosh(s) - 1.0; }, std::cosh(3.0));
  else
    pd.graph = MonotoneGraph::zero();

  if (c.nonlinearity == "double_well")
    pd.nl = SmoothNonlinearity::double_well();
  else if (c.nonlinearity == "identity")
    pd.nl = SmoothNonlinearity::identity();
  else
    pd.nl = SmoothNonlinearity::zero();

  if (c.forcing_kind == "constant") {
    const double value = c.forcing_value;
    pd.forcing.f = [value](const std::array<double, 2>&, double) {
      return value;
    };
  } else if (c.forcing_kind == "cosine") {
    const SpatialFn shape =
        InitialData::cosine(pd.domain, c.forcing_amplitude, {c.forcing_mode, 0});
    const double decay = c.forcing_decay;
    pd.forcing.f = [shape, decay](const std::array<double, 2>& x, double t) {
      return shape(x) * std::exp(-t / decay);
    };
  }

  pd.init.w0 = make_field(pd.domain, c.w0);
  pd.init.v0 = make_field(pd.domain, c.v0);
  pd.init.u0 = make_field(pd.domain, c.u0);
  return pd;
}

SweepPlan make_sweep_plan(const RunConfig& c, int threads) {
  SweepPlan plan;
  plan.parameter = c.sweep_parameter == "eps" ? SweepPlan::Parameter::Eps
                                              : SweepPlan::Parameter::Beta;
  plan.values = c.sweep_values;
  plan.base = make_problem_data(c);
  plan.config = make_solver_config(c);
  plan.perturb_data = c.sweep_perturb;
  plan.data_scale_exponent = c.sweep_scale_exponent;
  plan.threads = threads;
  return plan;
}

ManufacturedSolution make_manufactured(const RunConfig& c) {
  if (c.mms_preset == "steady_mode")
    return ManufacturedSolution::steady_mode(0.3, 0.4);
  if (c.mms_preset == "smooth_analytic")
    return ManufacturedSolution::smooth_analytic();
  return ManufacturedSolution::cosine_decay();
}

}  // namespace pfs
