#pragma once

#include <complex>
#include <vector>

namespace kpz::linalg {

using cd = std::complex<double>;

// Dense row-major complex matrix.
struct Matrix {
  int n = 0;
  std::vector<cd> a;  // size n*n, row-major

  Matrix() = default;
  explicit Matrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, cd(0.0)) {}

  cd& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const cd& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static Matrix identity(int n);
};

// Determinant by partial-pivoting LU (LAPACK zgetrf): product of U's diagonal
// times the pivot-permutation sign.  A numerically singular factorization
// returns 0.  The input is copied; `m` is not modified.
cd lu_determinant(const Matrix& m);

// Solve m x = b with LU + one step of iterative refinement.  Throws
// std::runtime_error("singular resolvent") when the factorization breaks down.
std::vector<cd> solve(const Matrix& m, const std::vector<cd>& b);

// C = alpha * A * B for square row-major complex matrices (zgemm).
Matrix matmul(const Matrix& A, const Matrix& B, cd alpha = cd(1.0));

// Real n x k times k x n product helper used by kernel assembly:
// C(n x n) += alpha * A * diag(d) * A^T, all row-major doubles (dgemm).
void add_adat(std::vector<double>& C, int n, const std::vector<double>& A,
              int k, const std::vector<double>& d, double alpha);

} // namespace kpz::linalg
