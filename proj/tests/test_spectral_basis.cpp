#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfs/spectral_basis.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace pfs;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent oracle: cosine coefficients of f(x) = x on [0, 1] against the
// L^2-normalized basis, by closed form. <x, 1> = 1/2 and
// <x, sqrt(2) cos(k pi x)> = sqrt(2) ((-1)^k - 1) / (k pi)^2.
double identity_coefficient(int k) {
  if (k == 0) return 0.5;
  const double sign = k % 2 == 0 ? 1.0 : -1.0;
  return std::sqrt(2.0) * (sign - 1.0) / (k * kPi * k * kPi);
}
}  // namespace

TEST_CASE("closed-form Neumann spectrum") {
  SpectralBasis b1(1.0, 3);
  REQUIRE(b1.total_modes() == 3);
  CHECK(b1.eigenvalues()[0] == doctest::Approx(0.0));
  CHECK(b1.eigenvalues()[1] == doctest::Approx(kPi * kPi));
  CHECK(b1.eigenvalues()[2] == doctest::Approx(4.0 * kPi * kPi));

  SpectralBasis b2(2.0, 2);
  CHECK(b2.eigenvalues()[0] == doctest::Approx(0.0));
  CHECK(b2.eigenvalues()[1] == doctest::Approx(kPi * kPi / 4.0));

  SpectralBasis b3(BoxDomain{2, {1.0, 1.0}}, {2, 2});
  REQUIRE(b3.total_modes() == 4);
  CHECK(b3.eigenvalues()[0] == doctest::Approx(0.0));
  CHECK(b3.eigenvalues()[1] == doctest::Approx(kPi * kPi));
  CHECK(b3.eigenvalues()[2] == doctest::Approx(kPi * kPi));
  CHECK(b3.eigenvalues()[3] == doctest::Approx(2.0 * kPi * kPi));
}

TEST_CASE("eigenvalues sorted, mode 0 constant") {
  SpectralBasis basis(BoxDomain{2, {1.0, 0.7}}, {5, 4});
  const auto& ev = basis.eigenvalues();
  for (int i = 0; i + 1 < basis.total_modes(); ++i) CHECK(ev[i] <= ev[i + 1]);
  CHECK(ev[0] == 0.0);
  CHECK(basis.mode_indices(0) == std::array<int, 2>{0, 0});
}

TEST_CASE("construction rejects bad arguments") {
  CHECK_THROWS_AS(SpectralBasis(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBasis(-1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBasis(BoxDomain{3, {1, 1}}, {2, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SpectralBasis(BoxDomain{2, {1.0, -2.0}}, {2, 2}),
                  std::invalid_argument);
}

TEST_CASE("constant mode synthesis") {
  SpectralBasis b1(1.0, 3);
  CoeffVector c = CoeffVector::Zero(3);
  c[0] = 1.0;
  GridFunction g = b1.to_grid(c);
  for (int q = 0; q < b1.grid_size(); ++q) CHECK(g[q] == doctest::Approx(1.0));

  SpectralBasis b2(2.0, 3);
  g = b2.to_grid((CoeffVector(3) << 1, 0, 0).finished());
  for (int q = 0; q < b2.grid_size(); ++q)
    CHECK(g[q] == doctest::Approx(1.0 / std::sqrt(2.0)));

  CHECK(b1.to_grid(CoeffVector::Zero(3)).abs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(b1.to_grid(CoeffVector::Zero(5)), std::invalid_argument);
}

TEST_CASE("projection round trip on the span") {
  SpectralBasis basis(1.0, 12);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  CoeffVector c(basis.total_modes());
  for (int i = 0; i < c.size(); ++i) c[i] = unif(rng);
  const CoeffVector back = basis.project(basis.to_grid(c));
  CHECK((back - c).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("eigenfunction projects to itself") {
  SpectralBasis basis(1.0, 8);
  const GridFunction gf = basis.sample(
      [](const std::array<double, 2>& x) { return std::cos(kPi * x[0]); });
  const CoeffVector c = basis.project(gf);
  // L^2-orthonormal convention: cos(pi x) = (1/sqrt(2)) v_1.
  CHECK(c[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  for (int i = 0; i < c.size(); ++i)
    if (i != 1) CHECK(std::abs(c[i]) <= 1e-12);
  CHECK((basis.to_grid(c) - gf).abs().maxCoeff() <= 1e-12);

  const CoeffVector c1 = basis.project(
      basis.sample([](const std::array<double, 2>&) { return 1.0; }));
  CHECK(c1[0] == doctest::Approx(1.0).epsilon(1e-13));
  for (int i = 1; i < c1.size(); ++i) CHECK(std::abs(c1[i]) <= 1e-13);
}

TEST_CASE("projection error of f(x) = x decreases and matches the tail") {
  // Error oracle from the closed-form coefficients: the squared L^2 error of
  // P_n is ||x||^2 - sum_{k<n} c_k^2 with ||x||^2 = 1/3.
  std::vector<double> errors;
  for (int n : {2, 4, 8, 16}) {
    SpectralBasis basis(1.0, n);
    const GridFunction gf = basis.sample(
        [](const std::array<double, 2>& x) { return x[0]; });
    const CoeffVector c = basis.project(gf);
    for (int k = 0; k < n; ++k)
      CHECK(c[k] == doctest::Approx(identity_coefficient(k)).epsilon(1e-12));
    double tail = 1.0 / 3.0;
    for (int k = 0; k < n; ++k) tail -= identity_coefficient(k) * identity_coefficient(k);
    const double err = basis.grid_l2_norm(gf - basis.to_grid(c));
    CHECK(err == doctest::Approx(std::sqrt(tail)).epsilon(1e-8));
    errors.push_back(err);
  }
  for (size_t i = 0; i + 1 < errors.size(); ++i) CHECK(errors[i + 1] < errors[i]);
}

TEST_CASE("spectral norm identities") {
  SpectralBasis basis(1.0, 4);
  CoeffVector c = CoeffVector::Zero(4);
  c[1] = 1.0;
  auto n = basis.norms(c);
  CHECK(n.l2 == doctest::Approx(1.0));
  CHECK(n.h1_semi == doctest::Approx(kPi));
  CHECK(n.laplacian_l2 == doctest::Approx(kPi * kPi));

  const CoeffVector zero = CoeffVector::Zero(4);
  n = basis.norms(zero);
  CHECK(n.l2 == 0.0);
  CHECK(n.h1_semi == 0.0);
  CHECK(n.laplacian_l2 == 0.0);

  c = CoeffVector::Zero(4);
  c[0] = 1.0;
  c[1] = 1.0;
  n = basis.norms(c);
  CHECK(n.l2 == doctest::Approx(std::sqrt(2.0)));
  CHECK(n.h1_semi == doctest::Approx(kPi));
  CHECK(n.laplacian_l2 == doctest::Approx(kPi * kPi));

  // Dual norm of a single mode is 1/sqrt(1 + lambda).
  CoeffVector e2 = CoeffVector::Zero(4);
  e2[2] = 1.0;
  CHECK(basis.dual_norm(e2) ==
        doctest::Approx(1.0 / std::sqrt(1.0 + 4.0 * kPi * kPi)));
}

TEST_CASE("orthonormality under quadrature up to n = 64") {
  for (int n : {8, 33, 64}) {
    SpectralBasis basis(1.0, n);
    const Eigen::MatrixXd gram =
        basis.projection_matrix() * basis.synthesis_matrix();
    CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <=
          1e-12);
  }
  SpectralBasis b2(BoxDomain{2, {1.4, 0.9}}, {7, 6});
  const int n2 = b2.total_modes();
  const Eigen::MatrixXd gram2 = b2.projection_matrix() * b2.synthesis_matrix();
  CHECK((gram2 - Eigen::MatrixXd::Identity(n2, n2)).cwiseAbs().maxCoeff() <=
        1e-12);
}

TEST_CASE("projection contracts the quadrature L2 norm") {
  SpectralBasis basis(1.0, 6);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    GridFunction g(basis.grid_size());
    for (int q = 0; q < basis.grid_size(); ++q) g[q] = unif(rng);
    CHECK(basis.norms(basis.project(g)).l2 <= basis.grid_l2_norm(g) + 1e-12);
  }
}

TEST_CASE("nested projections agree on common modes") {
  // P_m(P_n g) keeps the first m coefficients of P_n g, and direct
  // projections agree across basis sizes, for integrands every quadrature
  // grid resolves.
  auto g = [](const std::array<double, 2>& x) {
    return std::exp(std::cos(kPi * x[0])) + x[0] * x[0];
  };
  SpectralBasis big(1.0, 20), mid(1.0, 11), small(1.0, 5);
  const CoeffVector gb = big.project(big.sample(g));
  const CoeffVector gm = mid.project(mid.sample(g));
  const CoeffVector gs = small.project(small.sample(g));
  for (int i = 0; i < small.total_modes(); ++i) {
    CHECK(std::abs(gb[i] - gs[i]) <= 1e-12);
    CHECK(std::abs(gm[i] - gs[i]) <= 1e-12);
  }
  // Chain identity on a band-limited function: with f in V_5, P_12 f keeps
  // exactly the five coefficients and P_5(P_12 f) reproduces them.
  CoeffVector cf(5);
  cf << 0.3, -1.1, 0.45, 0.02, -0.6;
  auto f = [&](const std::array<double, 2>& x) {
    return small.evaluate_at(cf, x);
  };
  SpectralBasis twelve(1.0, 12);
  const CoeffVector cf12 = twelve.project(twelve.sample(f));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(cf12[i] - cf[i]) <= 1e-12);
  for (int i = 5; i < 12; ++i) CHECK(std::abs(cf12[i]) <= 1e-12);
  const GridFunction chained = small.sample([&](const std::array<double, 2>& x) {
    return twelve.evaluate_at(cf12, x);
  });
  const CoeffVector cf5 = small.project(chained);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(cf5[i] - cf[i]) <= 1e-12);
  // 2D: projecting the n-basis projection onto the m-basis changes nothing.
  SpectralBasis b2(BoxDomain{2, {1.0, 1.0}}, {6, 6});
  SpectralBasis s2(BoxDomain{2, {1.0, 1.0}}, {3, 3});
  auto g2 = [](const std::array<double, 2>& x) {
    return std::exp(std::cos(kPi * x[0])) * std::cos(kPi * x[1]);
  };
  const CoeffVector cb2 = b2.project(b2.sample(g2));
  const CoeffVector cs2 = s2.project(s2.sample(g2));
  for (int i = 0; i < s2.total_modes(); ++i) {
    const auto [k0, k1] = s2.mode_indices(i);
    for (int j = 0; j < b2.total_modes(); ++j)
      if (b2.mode_indices(j) == std::array<int, 2>{k0, k1})
        CHECK(cb2[j] == doctest::Approx(cs2[i]).epsilon(1e-11));
  }
}

TEST_CASE("laplacian via eigenvalues matches second differences") {
  SpectralBasis basis(1.0, 10);
  CoeffVector c(10);
  for (int k = 0; k < 10; ++k) c[k] = std::exp(-0.5 * k);
  CoeffVector lap = -(basis.eigenvalues().array() * c.array()).matrix();
  auto second_diff_error = [&](double h) {
    double worst = 0.0;
    for (double x = 0.2; x <= 0.8; x += 0.1) {
      const double fd = (basis.evaluate_at(c, {x - h, 0.0}) -
                         2.0 * basis.evaluate_at(c, {x, 0.0}) +
                         basis.evaluate_at(c, {x + h, 0.0})) /
                        (h * h);
      worst = std::max(worst, std::abs(fd - basis.evaluate_at(lap, {x, 0.0})));
    }
    return worst;
  };
  const double e1 = second_diff_error(1e-2);
  const double e2 = second_diff_error(5e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));  // second order in h
}

TEST_CASE("gradient synthesis matches the analytic derivative") {
  SpectralBasis basis(1.0, 5);
  CoeffVector c = CoeffVector::Zero(5);
  c[1] = 1.0;  // v_1 = sqrt(2) cos(pi x)
  const auto grad = basis.gradient_to_grid(c);
  for (int q = 0; q < basis.grid_size(); ++q) {
    const double x = basis.node(q)[0];
    CHECK(grad[0][q] ==
          doctest::Approx(-std::sqrt(2.0) * kPi * std::sin(kPi * x))
              .epsilon(1e-10));
    CHECK(grad[1][q] == 0.0);
  }
}
