#pragma once

#include <functional>
#include <limits>
#include <string>

namespace pfs {

/// Maximal monotone graph on R with 0 in gamma(0), together with the convex
/// potential phi (phi(0) = 0, subdifferential of phi = gamma). The catalog
/// covers the indicator subdifferential (double obstacle), odd powers, linear
/// slopes, user-supplied smooth functions and the zero graph.
///
/// All member functions are pure; graph descriptors are immutable and may be
/// shared freely across threads.
class MonotoneGraph {
 public:
  enum class Kind { Zero, Linear, Power, DoubleObstacle, Smooth };

  static MonotoneGraph zero();
  static MonotoneGraph linear(double slope);
  /// gamma(s) = s^p with odd exponent p >= 1.
  static MonotoneGraph power(int exponent);
  /// Subdifferential of the indicator of [lower, upper], lower <= 0 <= upper.
  static MonotoneGraph double_obstacle(double lower, double upper);
  /// Single-valued monotone function with value/derivative/potential callables
  /// and a local Lipschitz modulus hint (used only for reporting).
  static MonotoneGraph smooth(std::function<double(double)> value,
                              std::function<double(double)> derivative,
                              std::function<double(double)> potential,
                              double lipschitz_hint);

  Kind kind() const { return kind_; }
  std::string name() const;
  bool is_single_valued_smooth() const {
    return kind_ != Kind::DoubleObstacle;
  }

  /// Effective domain D(gamma) as [lower, upper] (infinities when unbounded).
  double domain_lower() const { return lower_; }
  double domain_upper() const { return upper_; }
  bool in_domain(double s) const { return s >= lower_ && s <= upper_; }

  /// phi(s); +infinity outside D(phi).
  double potential(double s) const;

  /// r = (I + eps gamma)^{-1}(s). Defined on all of R; closed form where
  /// available, otherwise safeguarded Newton/bisection on r + eps gamma(r) = s
  /// to 1e-14 residual.
  double resolvent(double eps, double s) const;

  /// Yosida regularization gamma_eps(s) = (s - resolvent(eps, s)) / eps.
  /// Evaluated as gamma(resolvent) for functional graphs, which is the same
  /// value but stays accurate for very small eps.
  double yosida(double eps, double s) const;

  /// Moreau envelope min_tau { |tau - s|^2 / (2 eps) + phi(tau) }.
  double moreau(double eps, double s) const;

  /// Element of gamma(s) with minimal modulus; throws std::domain_error for
  /// s outside D(gamma). At a vertical segment containing 0 this is 0.
  double minimal_section(double s) const;

  /// A.e. derivative of the Yosida regularization, in [0, 1/eps]; at kinks
  /// the right-limit is returned.
  double yosida_derivative(double eps, double s) const;

 private:
  MonotoneGraph() = default;

  double value(double r) const;       // gamma(r), functional kinds only
  double derivative(double r) const;  // gamma'(r), functional kinds only

  Kind kind_ = Kind::Zero;
  double slope_ = 0.0;
  int exponent_ = 1;
  double lower_ = -std::numeric_limits<double>::infinity();
  double upper_ = std::numeric_limits<double>::infinity();
  double lipschitz_hint_ = 0.0;
  std::function<double(double)> fn_;
  std::function<double(double)> dfn_;
  std::function<double(double)> phi_;
};

/// Yosida view bound to a fixed regularization parameter.
struct YosidaOperator {
  const MonotoneGraph* graph = nullptr;
  double eps = 1.0;

  double operator()(double s) const { return graph->yosida(eps, s); }
  double derivative(double s) const { return graph->yosida_derivative(eps, s); }
  double envelope(double s) const { return graph->moreau(eps, s); }
};

}  // namespace pfs
