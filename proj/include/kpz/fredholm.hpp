#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "kpz/linalg.hpp"
#include "kpz/quadrature.hpp"

namespace kpz::fredholm {

using cd = std::complex<double>;

// Complex contour rule: nodes z_i with complex weights that already include
// the local direction dz.
struct ContourRule {
  std::vector<cd> nodes;
  std::vector<cd> weights;
  [[nodiscard]] int size() const { return static_cast<int>(nodes.size()); }
};

// Fredholm determinant det(I - K) on L^2 of a real domain carrying the
// positive-weight rule: Nystrom matrix  delta_ij - sqrt(w_i w_j) K(x_i, x_j).
cd det(const std::function<cd(double, double)>& kernel,
       const quadrature::Rule& rule);

// Same discretization applied to a pre-assembled kernel matrix K_ij =
// K(x_i, x_j) (production path: K built by BLAS, no per-entry callback).
cd det_matrix(const linalg::Matrix& K, const quadrature::Rule& rule);

// Fredholm determinant on a complex contour: column-weight convention
// delta_ij - K(z_i, z_j) w_j (square roots of complex weights would need a
// branch choice; this form needs none).
cd det_contour(const std::function<cd(cd, cd)>& kernel,
               const ContourRule& rule);

// trace((I - K)^{-1} B) for the rank-one perturbation B(x,y) = u(x) v(y):
// solves the discretized (I - K W) phi = u and returns sum_i w_i v_i phi_i.
// Throws std::runtime_error("singular resolvent") if I - K is singular.
cd resolvent_rank_one_trace(const std::function<cd(double, double)>& kernel,
                            const std::function<cd(double)>& u,
                            const std::function<cd(double)>& v,
                            const quadrature::Rule& rule);

// Matrix variant of the above.
cd resolvent_rank_one_trace_matrix(const linalg::Matrix& K,
                                   const std::vector<cd>& u,
                                   const std::vector<cd>& v,
                                   const quadrature::Rule& rule);

} // namespace kpz::fredholm
