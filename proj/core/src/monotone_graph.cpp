#include "pfs/monotone_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pfs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double int_pow(double s, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= s;
  return r;
}
}  // namespace

MonotoneGraph MonotoneGraph::zero() { return MonotoneGraph{}; }

MonotoneGraph MonotoneGraph::linear(double slope) {
  if (slope < 0.0) throw std::invalid_argument("linear graph: slope must be >= 0");
  MonotoneGraph g;
  g.kind_ = Kind::Linear;
  g.slope_ = slope;
  g.lipschitz_hint_ = slope;
  return g;
}

MonotoneGraph MonotoneGraph::power(int exponent) {
  if (exponent < 1 || exponent % 2 == 0)
    throw std::invalid_argument("power graph: exponent must be odd and >= 1");
  MonotoneGraph g;
  g.kind_ = Kind::Power;
  g.exponent_ = exponent;
  return g;
}

MonotoneGraph MonotoneGraph::double_obstacle(double lower, double upper) {
  if (!(lower < upper) || lower > 0.0 || upper < 0.0)
    throw std::invalid_argument(
        "double obstacle: need lower <= 0 <= upper and lower < upper");
  MonotoneGraph g;
  g.kind_ = Kind::DoubleObstacle;
  g.lower_ = lower;
  g.upper_ = upper;
  return g;
}

MonotoneGraph MonotoneGraph::smooth(std::function<double(double)> value,
                                    std::function<double(double)> derivative,
                                    std::function<double(double)> potential,
                                    double lipschitz_hint) {
  if (!value || !derivative || !potential)
    throw std::invalid_argument("smooth graph: all callables required");
  if (std::abs(value(0.0)) > 1e-14)
    throw std::invalid_argument("smooth graph: gamma(0) must be 0");
  MonotoneGraph g;
  g.kind_ = Kind::Smooth;
  g.fn_ = std::move(value);
  g.dfn_ = std::move(derivative);
  g.phi_ = std::move(potential);
  g.lipschitz_hint_ = lipschitz_hint;
  return g;
}

std::string MonotoneGraph::name() const {
  switch (kind_) {
    case Kind::Zero: return "zero";
    case Kind::Linear: return "linear";
    case Kind::Power: return "power";
    case Kind::DoubleObstacle: return "double_obstacle";
    case Kind::Smooth: return "smooth";
  }
  return "?";
}

double MonotoneGraph::value(double r) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return slope_ * r;
    case Kind::Power: return int_pow(r, exponent_);
    case Kind::Smooth: return fn_(r);
    case Kind::DoubleObstacle: break;
  }
  throw std::logic_error("value() on a multivalued graph");
}

double MonotoneGraph::derivative(double r) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Linear: return slope_;
    case Kind::Power: return exponent_ * int_pow(r, exponent_ - 1);
    case Kind::Smooth: return dfn_(r);
    case Kind::DoubleObstacle: break;
  }
  throw std::logic_error("derivative() on a multivalued graph");
}

double MonotoneGraph::potential(double s) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Linear:
      return 0.5 * slope_ * s * s;
    case Kind::Power:
      return std::pow(std::abs(s), exponent_ + 1) / (exponent_ + 1);
    case Kind::DoubleObstacle:
      return (s >= lower_ && s <= upper_) ? 0.0 : kInf;
    case Kind::Smooth:
      return phi_(s);
  }
  return 0.0;
}

double MonotoneGraph::resolvent(double eps, double s) const {
  if (!(eps > 0.0)) throw std::invalid_argument("resolvent: eps must be > 0");
  switch (kind_) {
    case Kind::Zero:
      return s;
    case Kind::Linear:
      return s / (1.0 + eps * slope_);
    case Kind::DoubleObstacle:
      return std::clamp(s, lower_, upper_);
    case Kind::Power:
    case Kind::Smooth:
      break;
  }
  // Solve r + eps gamma(r) = s. gamma monotone with gamma(0) = 0 brackets the
  // root between 0 and s.
  double lo = std::min(0.0, s), hi = std::max(0.0, s);
  auto residual = [&](double r) { return r + eps * value(r) - s; };
  double r = s / (1.0 + eps * derivative(0.0));  // linearized first guess
  r = std::clamp(r, lo, hi);
  const double tol = 1e-14 * std::max(1.0, std::abs(s));
  for (int iter = 0; iter < 200; ++iter) {
    const double f = residual(r);
    if (std::abs(f) <= tol) return r;
    if (f > 0.0) hi = r; else lo = r;
    const double df = 1.0 + eps * derivative(r);
    double next = r - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect safeguard
    if (next == r) break;
    r = next;
  }
  return r;
}

double MonotoneGraph::yosida(double eps, double s) const {
  if (!(eps > 0.0)) throw std::invalid_argument("yosida: eps must be > 0");
  if (kind_ == Kind::DoubleObstacle) {
    if (s > upper_) return (s - upper_) / eps;
    if (s < lower_) return (s - lower_) / eps;
    return 0.0;
  }
  if (kind_ == Kind::Zero) return 0.0;
  if (kind_ == Kind::Linear) return slope_ * s / (1.0 + eps * slope_);
  // (s - r)/eps equals gamma(r) on the resolvent; the latter is stable for
  // very small eps.
  return value(resolvent(eps, s));
}

double MonotoneGraph::moreau(double eps, double s) const {
  if (!(eps > 0.0)) throw std::invalid_argument("moreau: eps must be > 0");
  const double r = resolvent(eps, s);
  const double d = s - r;
  return d * d / (2.0 * eps) + potential(r);
}

double MonotoneGraph::minimal_section(double s) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Linear:
      return slope_ * s;
    case Kind::Power:
      return int_pow(s, exponent_);
    case Kind::Smooth:
      return fn_(s);
    case Kind::DoubleObstacle:
      if (s < lower_ || s > upper_)
        throw std::domain_error("minimal_section: s outside D(gamma)");
      // The vertical rays at the endpoints contain 0.
      return 0.0;
  }
  return 0.0;
}

double MonotoneGraph::yosida_derivative(double eps, double s) const {
  if (!(eps > 0.0))
    throw std::invalid_argument("yosida_derivative: eps must be > 0");
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Linear:
      return slope_ / (1.0 + eps * slope_);
    case Kind::DoubleObstacle:
      // Right-limit convention at the kinks s = lower, s = upper.
      if (s < lower_) return 1.0 / eps;
      if (s < upper_) return 0.0;
      return 1.0 / eps;
    case Kind::Power:
    case Kind::Smooth:
      break;
  }
  const double dg = derivative(resolvent(eps, s));
  return dg / (1.0 + eps * dg);
}

}  // namespace pfs
