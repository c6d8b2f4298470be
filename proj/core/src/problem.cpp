#include "pfs/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pfs {

void ProblemParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("params: alpha must be > 0");
  if (beta < 0.0) throw std::invalid_argument("params: beta must be >= 0");
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("params: eps must be in (0, 1]");
  if (!(t_final > 0.0)) throw std::invalid_argument("params: t_final must be > 0");
}

SmoothNonlinearity SmoothNonlinearity::zero() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; },
          [](double) { return 0.0; }, 0.0};
}

SmoothNonlinearity SmoothNonlinearity::double_well() {
  return {[](double s) { return -2.0 * s; }, [](double) { return -2.0; },
          [](double s) { return 1.0 - s * s; }, 2.0};
}

SmoothNonlinearity SmoothNonlinearity::identity() {
  return {[](double s) { return s; }, [](double) { return 1.0; },
          [](double s) { return 0.5 * s * s; }, 1.0};
}

SpatialFn InitialData::constant(double value) {
  return [value](const std::array<double, 2>&) { return value; };
}

SpatialFn InitialData::cosine(const BoxDomain& domain, double amplitude,
                              std::array<int, 2> mode) {
  const double pi = std::numbers::pi;
  const int dim = domain.dim;
  const std::array<double, 2> lengths = domain.lengths;
  return [=](const std::array<double, 2>& x) {
    double v = amplitude * std::cos(mode[0] * pi * x[0] / lengths[0]);
    if (dim == 2) v *= std::cos(mode[1] * pi * x[1] / lengths[1]);
    return v;
  };
}

SpatialFn InitialData::tanh_front(double amplitude, double center,
                                  double width) {
  if (!(width > 0.0)) throw std::invalid_argument("tanh_front: width must be > 0");
  return [=](const std::array<double, 2>& x) {
    return amplitude * std::tanh((x[0] - center) / width);
  };
}

double free_energy(const GridFunction& theta, const GridFunction& u,
                   const SpectralBasis& basis,
                   const std::function<double(double)>& potential,
                   const std::function<double(double)>& G) {
  if (theta.size() != basis.grid_size() || u.size() != basis.grid_size())
    throw std::invalid_argument("free_energy: grid size mismatch");
  GridFunction density(basis.grid_size());
  for (int q = 0; q < basis.grid_size(); ++q) {
    const double phi_u = potential(u[q]);
    if (!std::isfinite(phi_u)) return std::numeric_limits<double>::infinity();
    density[q] = -0.5 * theta[q] * theta[q] - theta[q] * u[q] + phi_u + G(u[q]);
  }
  const auto n = basis.norms(basis.project(u));
  return basis.integrate(density) + 0.5 * n.h1_semi * n.h1_semi;
}

GridFunction enthalpy(const GridFunction& w_t, const GridFunction& u) {
  if (w_t.size() != u.size())
    throw std::invalid_argument("enthalpy: grid size mismatch");
  return w_t + u;
}

std::array<GridFunction, 2> heat_flux(FluxLaw law, const CoeffVector& w,
                                      const CoeffVector& w_t, double alpha,
                                      double beta, const SpectralBasis& basis) {
  std::array<GridFunction, 2> q{GridFunction::Zero(basis.grid_size()),
                                GridFunction::Zero(basis.grid_size())};
  if (law == FluxLaw::TypeI || law == FluxLaw::TypeIII) {
    const auto g = basis.gradient_to_grid(w_t);
    for (int d = 0; d < 2; ++d) q[d] -= alpha * g[d];
  }
  if (law == FluxLaw::TypeII || law == FluxLaw::TypeIII) {
    const auto g = basis.gradient_to_grid(w);
    for (int d = 0; d < 2; ++d) q[d] -= beta * g[d];
  }
  return q;
}

std::vector<CoeffVector> thermal_displacement(
    const std::vector<CoeffVector>& theta_history, const CoeffVector& w0,
    double dt) {
  if (!(dt > 0.0))
    throw std::invalid_argument("thermal_displacement: dt must be > 0");
  std::vector<CoeffVector> w;
  w.reserve(theta_history.size());
  CoeffVector acc = w0;
  w.push_back(acc);
  for (size_t k = 1; k < theta_history.size(); ++k) {
    acc += 0.5 * dt * (theta_history[k - 1] + theta_history[k]);
    w.push_back(acc);
  }
  return w;
}

}  // namespace pfs
