#pragma once

#include <complex>
#include <vector>

#include "kpz/linalg.hpp"
#include "kpz/quadrature.hpp"

// Integral kernels entering the crossover-distribution formulas: weighted
// Airy-product kernels K_sigma(x,y) = int sigma(t) Ai(x+t) Ai(y+t) dt for the
// relevant sigma-profiles, the symmetrized full-line variant, the split
// (regularized + Hilbert-transform) form of the sigma_T kernel, and the
// cosecant contour kernel.

namespace kpz::kernels {

using cd = std::complex<double>;

// Scaling bundle: kappa = 2^{-1/3} T^{1/3}, a = s - log sqrt(2 pi T); the
// half-line determinants live on L^2(a/kappa, infinity).
struct Params {
  double T = 1.0;
  double s = 0.0;
  [[nodiscard]] double kappa() const;
  [[nodiscard]] double a() const;
  [[nodiscard]] double s_phys() const { return a() / kappa(); }
};

// sigma-profiles ------------------------------------------------------------

// Crossover profile sigma(t) = mu / (mu - e^{-kappa t}); -> 1 at +inf, 0 at
// -inf (exponentially).  Finite for every mu off the positive real axis.
cd sigma_crossover(double t, double kappa, cd mu);
cd sigma_crossover_prime(double t, double kappa, cd mu);

// sigma_T(t) = 1/(1 - e^{-kappa t}): simple pole at t = 0 with residue
// 1/kappa; decays exponentially at -inf, -> 1 at +inf.
double sigma_gumbel(double t, double kappa);

// Regularized profile sigma_T(t) - 1/(kappa t); Laurent-series branch near
// t = 0 (value 1/2 there).
double sigma_gumbel_tilde(double t, double kappa);

// Airy kernel (closed form), diagonal handled by Ai'^2 - x Ai^2.
double airy_kernel(double x, double y);

// Airy-product quadrature --------------------------------------------------

// t-grid for int sigma(t) Ai(x+t) Ai(y+t) dt shared by all entries of a
// kernel matrix whose arguments satisfy x >= x_min.  Panel widths track the
// local Airy oscillation rate 2 sqrt(max(0, -(x_min + t))).  When
// `pole_at_zero` is set the grid is refined symmetrically about t = 0 so the
// principal value of a simple pole there cancels pairwise.
quadrature::Rule airy_t_grid(double x_min, double t_lo, double t_hi,
                             bool pole_at_zero = false);

// Variant for the mu-dependent sigma_{T,mu} family sharing one grid across a
// whole e^{i theta} / x +- i contour: panels additionally shrink inside the
// band where the complex sigma poles approach the real t axis (sharpness
// e^{kappa t}/kappa, for |mu| up to e^{log_mu_max}).
quadrature::Rule airy_t_grid_sigma(double x_min, double t_lo, double t_hi,
                                   double kappa, double log_mu_max);

// Cached matrix A_ik = Ai(x_i + t_k) for fixed spatial nodes and t-grid;
// assemble() contracts it against per-profile weights c_k = w_k sigma(t_k)
// through BLAS, giving K_ij = sum_k c_k Ai(x_i + t_k) Ai(x_j + t_k).
struct AiryFactor {
  int n = 0, nt = 0;
  std::vector<double> A;  // n x nt row-major
  quadrature::Rule tgrid;

  static AiryFactor build(const std::vector<double>& x, quadrature::Rule tg);
  [[nodiscard]] linalg::Matrix assemble(const std::vector<cd>& sigma_at_t) const;
  [[nodiscard]] std::vector<double> assemble_real(
      const std::vector<double>& sigma_at_t) const;
};

// Scalar entry K_{sigma_{T,mu}}(x, y) (adaptive quadrature, test/reference
// path; matrices use AiryFactor).
cd crossover_airy_kernel(double x, double y, double T, cd mu);

// Symmetrized full-line kernel
//   Khat(x,y) = sqrt(sigma(x - sbar)) K_Ai(x,y) sqrt(sigma(y - sbar)),
// principal branch square roots, sbar = a/kappa.
cd symmetrized_kernel(double x, double y, double sbar, double kappa, cd mu);

// sigma_T kernel, dual routes (Hilbert-transform identity) ------------------

// Split route: int sigma_tilde_T AiAi dt (averaged oscillatory tail with an
// explicit sine-integral remainder) + kappa^{-1} pi G_{(x-y)/2}((x+y)/2).
double gumbel_kernel_split(double x, double y, double T);

// Principal-value route: PV int sigma_T(t) Ai(x+t) Ai(y+t) dt.
double gumbel_kernel_pv(double x, double y, double T);

// Cosecant kernel ----------------------------------------------------------

// Vertical contours Gamma_eta = {c3/2 + i r}, Gamma_zeta = {-c3/2 + i r}
// truncated at |r| <= R with phase-graded panels; c3 = 2^{-4/3}.  The
// mu-independent data is precomputed once per (T, a):
//   S0_kj = exp(-(T/3)(zeta_k^3 - eta_j^3) + 2^{1/3} a (zeta_k - eta_j))
//           * pi 2^{1/3} / sin(pi 2^{1/3}(zeta_k - eta_j))
//   C_ik  = w_k / (zeta_k - eta_i)          (zeta weights folded in)
// and per mu only the diagonal powers (-mu)^{-+2^{1/3} *} touch S0.
struct CosecantSystem {
  double T = 1.0, a = 0.0, R = 0.0;
  std::vector<cd> eta, weta;    // weta includes the i dr direction
  std::vector<cd> zeta;
  std::vector<cd> S0;           // nzeta x neta row-major
  std::vector<cd> C;            // neta x nzeta row-major
  int neta = 0, nzeta = 0;
};

CosecantSystem build_cosecant_system(double T, double a, double R,
                                     double phase_per_panel = 8.0);

// det(I - K^csc_{a, mu}) on the truncated contour.
cd cosecant_det(const CosecantSystem& sys, cd mu);

// Single kernel entry K^csc(eta, eta') by zeta-quadrature (reference path).
cd cosecant_kernel_entry(const CosecantSystem& sys, cd mu, int i, int j);

// mu-dependent weight factor in closed form,
//   pi 2^{1/3} (-mu)^{-2^{1/3} z} / sin(pi 2^{1/3} z),   z = zeta - eta',
// and its defining t-integral  2^{1/3} int_R mu e^{-2^{1/3} t z}/(e^t - mu) dt
// (valid for Re z in (-2^{-1/3}, 0)), kept as a cross-check oracle.
cd cosecant_weight_closed(cd z, cd mu);
cd cosecant_weight_tintegral(cd z, cd mu);

} // namespace kpz::kernels
