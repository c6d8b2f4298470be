#pragma once

#include "pfs/config.hpp"

#include <string>
#include <vector>

namespace pfs {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The invariant suite behind the `check` subcommand: basis orthonormality
/// and nesting, the Yosida/Moreau property set, flux and enthalpy identities,
/// convolution checks, solver determinism and fixed points, the mode-0 ODE
/// oracle, gradient-flow energy dissipation, rate-fit exactness and the
/// config/snapshot round trips. Each check is deterministic and fast.
std::vector<CheckResult> run_property_checks(const RunConfig& config);

}  // namespace pfs
