#pragma once

#include "pfs/problem.hpp"
#include "pfs/solver.hpp"

#include <map>
#include <string>
#include <vector>

namespace pfs {

/// Named scalar channels of a solved run. Channel names are drawn from the
/// fixed registry returned by monitor_channel_names(); see the README for the
/// formulas. NaN values are flagged rather than dropped.
struct MonitorReport {
  std::vector<std::pair<std::string, double>> channels;
  std::vector<double> times;
  std::vector<double> energy_trace;  // regularized free energy per node

  double at(const std::string& name) const;
  bool all_finite() const;
};

const std::vector<std::string>& monitor_channel_names();

/// Trapezoid-rule time convolution (a * b)(t) = int_0^t a(s) b(t-s) ds on a
/// shared uniform grid. b of size 1 is broadcast as a constant kernel, so
/// convolve_time(ones, a) is the running integral of a.
std::vector<double> convolve_time(const std::vector<double>& a,
                                  const std::vector<double>& b, double dt);

/// Fill every registry channel from a solved trajectory:
/// sup-in-time and L^2-in-time norms of u, v, grad w, the discrete u_t,
/// the Moreau-envelope integral, sup-norms over the space-time cylinder,
/// the regularized free-energy trace and the enthalpy-balance residual of
/// e_t + div q = f. Discrete conventions: L^2(0,T) by trapezoid, L^infty(0,T)
/// as max over nodes, u_t by forward differences, w_t taken from the evolved v.
MonitorReport monitor(const Trajectory& traj, const ProblemData& pd,
                      const SpectralBasis& basis);

/// Norm bundles of the difference of two trajectories on matching grids.
/// "err1_bundle" sums H^1(0,T;L^2) + L^inf(0,T;H^1) of dw and
/// L^inf(0,T;L^2) + L^2(0,T;H^1) of du; "err2_bundle" sums
/// W^{1,inf}(0,T;H^1) + H^1(0,T;H^2) of dw and H^1(0,T;L^2) +
/// L^inf(0,T;H^1) + L^2(0,T;H^2) of du, with the H^2 level realized by
/// lambda^2 weighting in the eigenbasis.
std::map<std::string, double> difference_norms(const Trajectory& a,
                                               const Trajectory& b,
                                               const SpectralBasis& basis);

const std::vector<std::string>& difference_channel_names();

}  // namespace pfs
