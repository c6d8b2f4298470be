#pragma once

#include "pfs/monotone_graph.hpp"
#include "pfs/spectral_basis.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pfs {

/// Model parameters. beta = 0 selects the limit problem in which the
/// diffusive thermal-displacement term is absent.
struct ProblemParams {
  double alpha = 1.0;    // > 0
  double beta = 0.1;     // >= 0
  double eps = 1e-2;     // Yosida parameter, in (0, 1]
  double t_final = 0.25; // > 0

  void validate() const;
};

/// Lipschitz g together with its antiderivative G (G' = g) and derivative.
/// G is supplied analytically so energy diagnostics are exact.
struct SmoothNonlinearity {
  std::function<double(double)> g;
  std::function<double(double)> dg;
  std::function<double(double)> G;
  double lipschitz = 0.0;

  static SmoothNonlinearity zero();
  /// G(s) = 1 - s^2, g(s) = -2 s: the classic concave well pair.
  static SmoothNonlinearity double_well();
  /// g(s) = s, G(s) = s^2 / 2.
  static SmoothNonlinearity identity();
};

using SpaceTimeFn = std::function<double(const std::array<double, 2>&, double)>;

/// Source of the balance equation plus the optional manufactured source of
/// the phase equation (zero in physics runs).
struct ForcingTerm {
  SpaceTimeFn f;  // empty = zero
  SpaceTimeFn h;  // empty = zero; nonzero only in manufactured-solution mode

  bool has_f() const { return static_cast<bool>(f); }
  bool has_h() const { return static_cast<bool>(h); }
};

struct InitialData {
  SpatialFn w0;
  SpatialFn v0;
  SpatialFn u0;

  static SpatialFn constant(double value);
  /// amplitude * cos(k0 pi x/L0) * cos(k1 pi y/L1) (k1 ignored in 1D).
  static SpatialFn cosine(const BoxDomain& domain, double amplitude,
                          std::array<int, 2> mode);
  /// amplitude * tanh((x - center)/width) along axis 0.
  static SpatialFn tanh_front(double amplitude, double center, double width);
};

struct ProblemData {
  BoxDomain domain;
  ProblemParams params;
  MonotoneGraph graph = MonotoneGraph::zero();
  SmoothNonlinearity nl = SmoothNonlinearity::zero();
  ForcingTerm forcing;
  InitialData init;
};

enum class FluxLaw { TypeI, TypeII, TypeIII };

/// Total free energy: integral of -theta^2/2 - theta u + phi(u) + G(u)
/// + |grad u|^2 / 2. Returns +infinity when phi(u) is infinite at a node.
/// The gradient term is computed spectrally from the projection of u.
double free_energy(const GridFunction& theta, const GridFunction& u,
                   const SpectralBasis& basis,
                   const std::function<double(double)>& potential,
                   const std::function<double(double)>& G);

/// e = w_t + u, pointwise.
GridFunction enthalpy(const GridFunction& w_t, const GridFunction& u);

/// Heat flux on the quadrature grid, one component per axis:
/// TypeI: -alpha grad w_t; TypeII: -beta grad w; TypeIII their sum.
std::array<GridFunction, 2> heat_flux(FluxLaw law, const CoeffVector& w,
                                      const CoeffVector& w_t, double alpha,
                                      double beta, const SpectralBasis& basis);

/// w(t_k) = w0 + trapezoidal time integral of theta over the uniform grid.
std::vector<CoeffVector> thermal_displacement(
    const std::vector<CoeffVector>& theta_history, const CoeffVector& w0,
    double dt);

}  // namespace pfs
