#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kpz/fredholm.hpp"
#include "kpz/quadrature.hpp"

using cd = std::complex<double>;

namespace {

// separable kernel K(x,y) = e^{-x-y} on [0,inf): det(I-K) = 1 - 1/2
cd sep_kernel(double x, double y) { return std::exp(-x - y); }

} // namespace

TEST_CASE("Fredholm determinant of separable exponential kernel") {
  const auto rule = kpz::quadrature::half_line_rule(0.0, 40.0, 16, 12);
  const double d = kpz::fredholm::det(sep_kernel, rule).real();
  CHECK(d == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Determinant converges under node doubling") {
  const auto r1 = kpz::quadrature::half_line_rule(0.0, 40.0, 10, 8);
  const auto r2 = kpz::quadrature::half_line_rule(0.0, 40.0, 20, 12);
  const double d1 = kpz::fredholm::det(sep_kernel, r1).real();
  const double d2 = kpz::fredholm::det(sep_kernel, r2).real();
  CHECK(std::abs(d1 - d2) < 1e-10);
}

TEST_CASE("Rank-one resolvent identity") {
  // det(I - K + u v^T weighted) = det(I-K) * (1 - tr((I-K)^{-1} u v^T))
  // with trace computed through the resolvent helper
  const auto rule = kpz::quadrature::half_line_rule(0.0, 30.0, 14, 10);
  const int n = rule.size();
  kpz::linalg::Matrix K(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      K(i, j) = 0.3 * std::exp(-rule.nodes[i] - 2.0 * rule.nodes[j]);
  std::vector<cd> u(n), v(n);
  for (int i = 0; i < n; ++i) {
    u[i] = std::exp(-1.7 * rule.nodes[i]);
    v[i] = std::exp(-0.9 * rule.nodes[i]);
  }
  const cd tr = kpz::fredholm::resolvent_rank_one_trace_matrix(K, u, v, rule);

  // direct check: build I - K W - u v^T W and compare determinants
  kpz::linalg::Matrix A(n), B(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cd w = rule.weights[j];
      A(i, j) = (i == j ? 1.0 : 0.0) - K(i, j) * w;
      B(i, j) = A(i, j) - u[i] * v[j] * w;
    }
  const cd dA = kpz::linalg::lu_determinant(A);
  const cd dB = kpz::linalg::lu_determinant(B);
  CHECK(std::abs(dB - dA * (1.0 - tr)) < 1e-12 * std::abs(dA));
}

TEST_CASE("Symmetrized and column conventions agree") {
  const auto rule = kpz::quadrature::half_line_rule(0.0, 35.0, 14, 10);
  // symmetric positive kernel
  auto k = [](double x, double y) {
    return cd(std::exp(-0.5 * (x * x + y * y) - 0.2 * x * y));
  };
  const int n = rule.size();
  kpz::linalg::Matrix K(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) K(i, j) = k(rule.nodes[i], rule.nodes[j]);
  const cd sym = kpz::fredholm::det_matrix(K, rule);
  // column convention: delta_ij - K_ij w_j
  kpz::linalg::Matrix M(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      M(i, j) = (i == j ? 1.0 : 0.0) - K(i, j) * rule.weights[j];
  const cd col = kpz::linalg::lu_determinant(M);
  CHECK(std::abs(sym - col) < 1e-12);
}

TEST_CASE("Non-finite kernel entries are reported") {
  const auto rule = kpz::quadrature::gauss_legendre(6, 0.0, 1.0);
  auto bad = [](double x, double y) {
    return cd(x == y ? std::numeric_limits<double>::quiet_NaN() : 0.0);
  };
  (void)bad;
  const int n = rule.size();
  kpz::linalg::Matrix K(n);
  K(2, 2) = cd(std::numeric_limits<double>::infinity(), 0.0);
  CHECK_THROWS_AS(kpz::fredholm::det_matrix(K, rule), std::runtime_error);
}
