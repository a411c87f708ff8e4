#include "kpz/linalg.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <stdexcept>

namespace kpz::linalg {

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = cd(1.0);
  return m;
}

cd lu_determinant(const Matrix& m) {
  if (m.n == 0) return cd(1.0);
  std::vector<cd> lu = m.a;
  std::vector<lapack_int> ipiv(m.n);
  const lapack_int info = LAPACKE_zgetrf(
      LAPACK_ROW_MAJOR, m.n, m.n,
      reinterpret_cast<lapack_complex_double*>(lu.data()), m.n, ipiv.data());
  if (info < 0) throw std::runtime_error("lu_determinant: bad argument to zgetrf");
  if (info > 0) return cd(0.0);
  cd det(1.0);
  for (int i = 0; i < m.n; ++i) {
    det *= lu[static_cast<size_t>(i) * m.n + i];
    if (ipiv[i] != i + 1) det = -det;
  }
  return det;
}

std::vector<cd> solve(const Matrix& m, const std::vector<cd>& b) {
  if (static_cast<int>(b.size()) != m.n)
    throw std::invalid_argument("solve: size mismatch");
  std::vector<cd> lu = m.a;
  std::vector<lapack_int> ipiv(m.n);
  lapack_int info = LAPACKE_zgetrf(
      LAPACK_ROW_MAJOR, m.n, m.n,
      reinterpret_cast<lapack_complex_double*>(lu.data()), m.n, ipiv.data());
  if (info != 0) throw std::runtime_error("singular resolvent");
  std::vector<cd> x = b;
  auto trs = [&](std::vector<cd>& rhs) {
    info = LAPACKE_zgetrs(
        LAPACK_ROW_MAJOR, 'N', m.n, 1,
        reinterpret_cast<lapack_complex_double*>(lu.data()), m.n, ipiv.data(),
        reinterpret_cast<lapack_complex_double*>(rhs.data()), 1);
    if (info != 0) throw std::runtime_error("singular resolvent");
  };
  trs(x);
  // one refinement step: r = b - m x, x += solve(r)
  std::vector<cd> r = b;
  const cd one(1.0), minus_one(-1.0);
  cblas_zgemv(CblasRowMajor, CblasNoTrans, m.n, m.n, &minus_one, m.a.data(),
              m.n, x.data(), 1, &one, r.data(), 1);
  trs(r);
  for (int i = 0; i < m.n; ++i) x[i] += r[i];
  return x;
}

Matrix matmul(const Matrix& A, const Matrix& B, cd alpha) {
  if (A.n != B.n) throw std::invalid_argument("matmul: size mismatch");
  Matrix C(A.n);
  const cd beta(0.0);
  cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, A.n, A.n, A.n, &alpha,
              A.a.data(), A.n, B.a.data(), B.n, &beta, C.a.data(), C.n);
  return C;
}

void add_adat(std::vector<double>& C, int n, const std::vector<double>& A,
              int k, const std::vector<double>& d, double alpha) {
  // B = A * diag(d)  (n x k), then C += alpha * B * A^T
  std::vector<double> B(static_cast<size_t>(n) * k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j)
      B[static_cast<size_t>(i) * k + j] = A[static_cast<size_t>(i) * k + j] * d[j];
  cblas_dgemm(CblasRowMajor, CblasNoTrans, CblasTrans, n, n, k, alpha, B.data(),
              k, A.data(), k, 1.0, C.data(), n);
}

} // namespace kpz::linalg
