#pragma once

#include "pfs/solver.hpp"
#include "pfs/spectral_basis.hpp"

#include <string>

namespace pfs {

/// Self-describing binary trajectory snapshot. Little-endian layout:
///   bytes 0..7   magic "PFSNAP01"
///   u32 version (1), u32 dim
///   f64 length_x, f64 length_y
///   u32 n_modes_x, u32 n_modes_y
///   u32 mode_ordering (1 = non-decreasing eigenvalue, lexicographic ties)
///   u32 scheme (0 = imex_euler, 1 = imex_cn)
///   f64 dt, alpha, beta, eps
///   u64 n_states, u64 n_coefficients
/// then per state: f64 t, then the w, v, u coefficient blocks (f64 each).
struct SnapshotHeader {
  int dim = 1;
  double length_x = 1.0, length_y = 1.0;
  int n_modes_x = 1, n_modes_y = 1;
  int mode_ordering = 1;
  int scheme = 0;
  double dt = 0.0, alpha = 0.0, beta = 0.0, eps = 0.0;
};

void write_snapshot(const std::string& path, const Trajectory& traj,
                    const BoxDomain& domain);

struct Snapshot {
  SnapshotHeader header;
  Trajectory trajectory;
};

Snapshot read_snapshot(const std::string& path);

}  // namespace pfs
