#include "kpz/fredholm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kpz::fredholm {

namespace {

void check_finite(const cd& v, int i, int j) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::runtime_error("fredholm: non-finite kernel value at node pair (" +
                             std::to_string(i) + ", " + std::to_string(j) + ")");
}

} // namespace

cd det(const std::function<cd(double, double)>& kernel,
       const quadrature::Rule& rule) {
  const int n = rule.size();
  linalg::Matrix K(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      K(i, j) = kernel(rule.nodes[i], rule.nodes[j]);
      check_finite(K(i, j), i, j);
    }
  return det_matrix(K, rule);
}

cd det_matrix(const linalg::Matrix& K, const quadrature::Rule& rule) {
  const int n = rule.size();
  if (K.n != n) throw std::invalid_argument("det_matrix: size mismatch");
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(rule.weights[i]);
  linalg::Matrix M(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      M(i, j) = ((i == j) ? cd(1.0) : cd(0.0)) - sw[i] * sw[j] * K(i, j);
      check_finite(M(i, j), i, j);
    }
  return linalg::lu_determinant(M);
}

cd det_contour(const std::function<cd(cd, cd)>& kernel,
               const ContourRule& rule) {
  const int n = rule.size();
  linalg::Matrix M(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cd k = kernel(rule.nodes[i], rule.nodes[j]);
      check_finite(k, i, j);
      M(i, j) = ((i == j) ? cd(1.0) : cd(0.0)) - k * rule.weights[j];
    }
  return linalg::lu_determinant(M);
}

cd resolvent_rank_one_trace(const std::function<cd(double, double)>& kernel,
                            const std::function<cd(double)>& u,
                            const std::function<cd(double)>& v,
                            const quadrature::Rule& rule) {
  const int n = rule.size();
  linalg::Matrix K(n);
  std::vector<cd> uv(n), vv(n);
  for (int i = 0; i < n; ++i) {
    uv[i] = u(rule.nodes[i]);
    vv[i] = v(rule.nodes[i]);
    for (int j = 0; j < n; ++j) {
      K(i, j) = kernel(rule.nodes[i], rule.nodes[j]);
      check_finite(K(i, j), i, j);
    }
  }
  return resolvent_rank_one_trace_matrix(K, uv, vv, rule);
}

cd resolvent_rank_one_trace_matrix(const linalg::Matrix& K,
                                   const std::vector<cd>& u,
                                   const std::vector<cd>& v,
                                   const quadrature::Rule& rule) {
  const int n = rule.size();
  linalg::Matrix M(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      M(i, j) = ((i == j) ? cd(1.0) : cd(0.0)) - K(i, j) * rule.weights[j];
  const std::vector<cd> phi = linalg::solve(M, u);
  cd tr(0.0);
  for (int i = 0; i < n; ++i) tr += rule.weights[i] * v[i] * phi[i];
  return tr;
}

} // namespace kpz::fredholm
