#include "pfs/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pfs {

namespace {

constexpr double kPi = std::numbers::pi;

// Cosine eigenfunction k on [0, L], L^2-normalized:
//   v_0 = 1/sqrt(L),  v_k = sqrt(2/L) cos(k pi x / L).
double mode_value(int k, double length, double x) {
  if (k == 0) return 1.0 / std::sqrt(length);
  return std::sqrt(2.0 / length) * std::cos(k * kPi * x / length);
}

double mode_derivative(int k, double length, double x) {
  if (k == 0) return 0.0;
  const double freq = k * kPi / length;
  return -std::sqrt(2.0 / length) * freq * std::sin(freq * x);
}

double mode_eigenvalue(int k, double length) {
  const double freq = k * kPi / length;
  return freq * freq;
}

}  // namespace

void gauss_legendre(int n, double a, double b, Eigen::VectorXd& nodes,
                    Eigen::VectorXd& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    nodes[n - 1 - i] = -x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  // Map [-1, 1] -> [a, b] and sort ascending.
  const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + half * nodes[i];
    weights[i] *= half;
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return nodes[i] < nodes[j]; });
  Eigen::VectorXd sn(n), sw(n);
  for (int i = 0; i < n; ++i) {
    sn[i] = nodes[order[i]];
    sw[i] = weights[order[i]];
  }
  nodes = sn;
  weights = sw;
}

SpectralBasis::SpectralBasis(const BoxDomain& domain,
                             std::array<int, 2> modes_per_axis)
    : domain_(domain) {
  if (domain.dim != 1 && domain.dim != 2)
    throw std::invalid_argument("SpectralBasis: dim must be 1 or 2");
  for (int d = 0; d < domain.dim; ++d) {
    if (!(domain.lengths[d] > 0.0))
      throw std::invalid_argument("SpectralBasis: lengths must be positive");
    if (modes_per_axis[d] < 1)
      throw std::invalid_argument("SpectralBasis: need at least one mode per axis");
  }

  n_modes_ = modes_per_axis;
  std::array<double, 2> lengths = domain.lengths;
  if (domain.dim == 1) {  // collapse axis 1 to a singleton constant mode
    n_modes_[1] = 1;
    lengths[1] = 1.0;
  }

  for (int d = 0; d < 2; ++d) {
    // 2.5x oversampling plus a fixed margin keeps the Gram matrix at machine
    // precision through n = 64 and de-aliases cubic nonlinear terms.
    n_quad_[d] = (n_modes_[d] * 5 + 1) / 2 + 8;
    gauss_legendre(n_quad_[d], 0.0, lengths[d], axis_nodes_[d], axis_weights_[d]);
    axis_synth_[d].resize(n_quad_[d], n_modes_[d]);
    axis_dsynth_[d].resize(n_quad_[d], n_modes_[d]);
    for (int q = 0; q < n_quad_[d]; ++q) {
      for (int k = 0; k < n_modes_[d]; ++k) {
        axis_synth_[d](q, k) = mode_value(k, lengths[d], axis_nodes_[d][q]);
        axis_dsynth_[d](q, k) = mode_derivative(k, lengths[d], axis_nodes_[d][q]);
      }
    }
  }

  // Enumerate tensor modes, sort by eigenvalue with lexicographic tiebreak.
  mode_index_.reserve(static_cast<size_t>(n_modes_[0]) * n_modes_[1]);
  for (int k0 = 0; k0 < n_modes_[0]; ++k0)
    for (int k1 = 0; k1 < n_modes_[1]; ++k1) mode_index_.push_back({k0, k1});
  auto lambda_of = [&](const std::array<int, 2>& k) {
    return mode_eigenvalue(k[0], lengths[0]) + mode_eigenvalue(k[1], lengths[1]);
  };
  std::stable_sort(mode_index_.begin(), mode_index_.end(),
                   [&](const auto& a, const auto& b) {
                     const double la = lambda_of(a), lb = lambda_of(b);
                     if (la != lb) return la < lb;
                     return a < b;
                   });
  eigenvalues_.resize(static_cast<Eigen::Index>(mode_index_.size()));
  for (size_t i = 0; i < mode_index_.size(); ++i)
    eigenvalues_[static_cast<Eigen::Index>(i)] = lambda_of(mode_index_[i]);

  weights_.resize(grid_size());
  for (int q0 = 0; q0 < n_quad_[0]; ++q0)
    for (int q1 = 0; q1 < n_quad_[1]; ++q1)
      weights_[q0 * n_quad_[1] + q1] = axis_weights_[0][q0] * axis_weights_[1][q1];

  synth_full_.resize(grid_size(), total_modes());
  for (int i = 0; i < total_modes(); ++i) {
    const auto [k0, k1] = mode_index_[i];
    for (int q0 = 0; q0 < n_quad_[0]; ++q0)
      for (int q1 = 0; q1 < n_quad_[1]; ++q1)
        synth_full_(q0 * n_quad_[1] + q1, i) =
            axis_synth_[0](q0, k0) * axis_synth_[1](q1, k1);
  }
  proj_full_ = synth_full_.transpose() * weights_.matrix().asDiagonal();
}

void SpectralBasis::require_coeff_size(const CoeffVector& c) const {
  if (c.size() != total_modes())
    throw std::invalid_argument("SpectralBasis: coefficient length mismatch");
}

void SpectralBasis::require_grid_size(const GridFunction& g) const {
  if (g.size() != grid_size())
    throw std::invalid_argument("SpectralBasis: grid size mismatch");
}

std::array<double, 2> SpectralBasis::node(int q) const {
  const int q0 = q / n_quad_[1], q1 = q % n_quad_[1];
  return {axis_nodes_[0][q0], axis_nodes_[1][q1]};
}

GridFunction SpectralBasis::to_grid(const CoeffVector& c) const {
  require_coeff_size(c);
  return (synth_full_ * c).array();
}

std::array<GridFunction, 2> SpectralBasis::gradient_to_grid(
    const CoeffVector& c) const {
  require_coeff_size(c);
  std::array<GridFunction, 2> out;
  for (int axis = 0; axis < 2; ++axis) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(grid_size());
    if (axis < dim()) {
      const Eigen::MatrixXd& s0 = axis == 0 ? axis_dsynth_[0] : axis_synth_[0];
      const Eigen::MatrixXd& s1 = axis == 1 ? axis_dsynth_[1] : axis_synth_[1];
      Eigen::MatrixXd cm = Eigen::MatrixXd::Zero(n_modes_[0], n_modes_[1]);
      for (int i = 0; i < total_modes(); ++i)
        cm(mode_index_[i][0], mode_index_[i][1]) = c[i];
      Eigen::MatrixXd v = s0 * cm * s1.transpose();  // (q0 x q1)
      for (int q0 = 0; q0 < n_quad_[0]; ++q0)
        for (int q1 = 0; q1 < n_quad_[1]; ++q1) g[q0 * n_quad_[1] + q1] = v(q0, q1);
    }
    out[axis] = g.array();
  }
  return out;
}

CoeffVector SpectralBasis::project(const GridFunction& values) const {
  require_grid_size(values);
  return proj_full_ * values.matrix();
}

GridFunction SpectralBasis::sample(const SpatialFn& f) const {
  GridFunction g(grid_size());
  for (int q = 0; q < grid_size(); ++q) g[q] = f(node(q));
  return g;
}

double SpectralBasis::evaluate_at(const CoeffVector& c,
                                  const std::array<double, 2>& x) const {
  require_coeff_size(c);
  std::array<double, 2> lengths = domain_.lengths;
  if (dim() == 1) lengths[1] = 1.0;
  double acc = 0.0;
  for (int i = 0; i < total_modes(); ++i) {
    const auto [k0, k1] = mode_index_[i];
    acc += c[i] * mode_value(k0, lengths[0], x[0]) *
           mode_value(k1, lengths[1], dim() == 1 ? 0.5 : x[1]);
  }
  return acc;
}

double SpectralBasis::integrate(const GridFunction& values) const {
  require_grid_size(values);
  return (weights_.array() * values).sum();
}

double SpectralBasis::grid_l2_norm(const GridFunction& values) const {
  require_grid_size(values);
  return std::sqrt((weights_.array() * values.square()).sum());
}

SpectralNorms SpectralBasis::norms(const CoeffVector& c) const {
  require_coeff_size(c);
  SpectralNorms n;
  n.l2 = c.norm();
  n.h1_semi = std::sqrt((eigenvalues_.array() * c.array().square()).sum());
  n.laplacian_l2 =
      std::sqrt((eigenvalues_.array().square() * c.array().square()).sum());
  return n;
}

SpectralNorms SpectralBasis::norms(const GridFunction& values) const {
  return norms(project(values));
}

double SpectralBasis::h1_norm(const CoeffVector& c) const {
  require_coeff_size(c);
  return std::sqrt(((1.0 + eigenvalues_.array()) * c.array().square()).sum());
}

double SpectralBasis::h2_norm(const CoeffVector& c) const {
  require_coeff_size(c);
  return std::sqrt(
      ((1.0 + eigenvalues_.array().square()) * c.array().square()).sum());
}

double SpectralBasis::dual_norm(const CoeffVector& c) const {
  require_coeff_size(c);
  return std::sqrt((c.array().square() / (1.0 + eigenvalues_.array())).sum());
}

const Eigen::MatrixXd& SpectralBasis::synthesis_matrix() const {
  return synth_full_;
}

const Eigen::MatrixXd& SpectralBasis::projection_matrix() const {
  return proj_full_;
}

}  // namespace pfs
