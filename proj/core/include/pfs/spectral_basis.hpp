#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <vector>

namespace pfs {

/// Axis-aligned box in 1 or 2 dimensions, [0, L0] (x [0, L1]).
struct BoxDomain {
  int dim = 1;
  std::array<double, 2> lengths{1.0, 1.0};

  double measure() const {
    return dim == 1 ? lengths[0] : lengths[0] * lengths[1];
  }
};

/// Coefficients with respect to the eigenbasis, ordered by non-decreasing
/// eigenvalue (ties broken lexicographically by axis indices).
using CoeffVector = Eigen::VectorXd;

/// Point values on the tensor quadrature grid, axis-0 major.
using GridFunction = Eigen::ArrayXd;

/// Scalar field evaluated at a physical point (second coordinate unused in 1D).
using SpatialFn = std::function<double(const std::array<double, 2>&)>;

struct SpectralNorms {
  double l2 = 0.0;           // ||.||_{L^2}
  double h1_semi = 0.0;      // ||grad .||_{L^2}
  double laplacian_l2 = 0.0; // ||lap .||_{L^2}
};

/// L^2-orthonormal Neumann eigenbasis of -lap on a box: tensor products of
/// cos(k pi x / L) modes, eigenvalue sum of (k pi / L)^2 per axis. Mode 0 is
/// the normalized constant with eigenvalue 0. Quadrature is tensor
/// Gauss-Legendre with 2x oversampling so cubic nonlinearities are integrated
/// without significant aliasing.
///
/// Immutable after construction; all operations are const and thread-safe.
class SpectralBasis {
 public:
  SpectralBasis(const BoxDomain& domain, std::array<int, 2> modes_per_axis);

  /// 1D convenience: n modes on [0, L].
  SpectralBasis(double length, int n_modes)
      : SpectralBasis(BoxDomain{1, {length, 1.0}}, {n_modes, 1}) {}

  const BoxDomain& domain() const { return domain_; }
  int dim() const { return domain_.dim; }
  std::array<int, 2> modes_per_axis() const { return n_modes_; }
  int total_modes() const { return static_cast<int>(eigenvalues_.size()); }
  int grid_size() const { return n_quad_[0] * n_quad_[1]; }

  /// Eigenvalues in storage order (non-decreasing).
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// Per-axis cosine indices of the mode stored at flat index i.
  std::array<int, 2> mode_indices(int i) const { return mode_index_[i]; }

  /// Physical coordinates of flattened quadrature node q.
  std::array<double, 2> node(int q) const;
  /// Quadrature weight of flattened node q.
  double weight(int q) const { return weights_[q]; }

  /// Pointwise synthesis sum_i c_i v_i at the quadrature nodes.
  GridFunction to_grid(const CoeffVector& c) const;
  /// Per-axis components of grad(sum_i c_i v_i) at the quadrature nodes.
  std::array<GridFunction, 2> gradient_to_grid(const CoeffVector& c) const;
  /// L^2-orthogonal projection onto span(v_0..v_{n-1}) via quadrature.
  CoeffVector project(const GridFunction& values) const;
  /// Evaluate a callable at the quadrature nodes.
  GridFunction sample(const SpatialFn& f) const;
  /// Evaluate the synthesis at an arbitrary point of the box.
  double evaluate_at(const CoeffVector& c, const std::array<double, 2>& x) const;

  /// integral over the box of the grid values.
  double integrate(const GridFunction& values) const;
  /// Quadrature L^2 norm of grid values.
  double grid_l2_norm(const GridFunction& values) const;

  /// Exact spectral norms: (sqrt(sum c^2), sqrt(sum lambda c^2), sqrt(sum lambda^2 c^2)).
  SpectralNorms norms(const CoeffVector& c) const;
  /// norms() of the projection of grid values.
  SpectralNorms norms(const GridFunction& values) const;
  /// Full H^1 norm sqrt(sum (1 + lambda) c^2).
  double h1_norm(const CoeffVector& c) const;
  /// Graph H^2 norm sqrt(sum (1 + lambda^2) c^2).
  double h2_norm(const CoeffVector& c) const;
  /// Dual (H^1)' norm sqrt(sum c^2 / (1 + lambda)) of the (1 - lap) pairing.
  double dual_norm(const CoeffVector& c) const;

  /// Synthesis matrix (grid_size x total_modes); used for Jacobian assembly.
  const Eigen::MatrixXd& synthesis_matrix() const;
  /// Projection matrix (total_modes x grid_size) = S^T diag(weights).
  const Eigen::MatrixXd& projection_matrix() const;

 private:
  void require_coeff_size(const CoeffVector& c) const;
  void require_grid_size(const GridFunction& g) const;

  BoxDomain domain_;
  std::array<int, 2> n_modes_{1, 1};
  std::array<int, 2> n_quad_{1, 1};

  // Per-axis quadrature and mode tables. Axis 1 collapses to a single
  // constant mode / single node when dim == 1.
  std::array<Eigen::VectorXd, 2> axis_nodes_;
  std::array<Eigen::VectorXd, 2> axis_weights_;
  std::array<Eigen::MatrixXd, 2> axis_synth_;   // (q_d x n_d), v_k(x_q)
  std::array<Eigen::MatrixXd, 2> axis_dsynth_;  // (q_d x n_d), v_k'(x_q)

  std::vector<std::array<int, 2>> mode_index_;  // flat -> (k0, k1), sorted
  Eigen::VectorXd eigenvalues_;
  Eigen::VectorXd weights_;  // flattened tensor weights

  Eigen::MatrixXd synth_full_;  // lazy-free: built in ctor (small at desk scale)
  Eigen::MatrixXd proj_full_;
};

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, Eigen::VectorXd& nodes,
                    Eigen::VectorXd& weights);

inline SpectralBasis build_basis(const BoxDomain& domain,
                                 std::array<int, 2> modes_per_axis) {
  return SpectralBasis(domain, modes_per_axis);
}

}  // namespace pfs
