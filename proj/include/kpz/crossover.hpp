#pragma once

#include <complex>
#include <vector>

#include "kpz/kernels.hpp"

// Evaluation of the crossover distribution F_T(s) by its three equivalent
// Fredholm-determinant representations, the Tracy-Widom GUE distribution, and
// the scan helpers for the large-T / small-T limit checks.

namespace kpz::crossover {

using cd = std::complex<double>;

struct FtResult {
  double value = 0.0;
  double imag_residual = 0.0;  // |Im| of the contour integral; convergence diagnostic
};

struct Config {
  double mu_ray_xmax = 20.0;    // e^{-x} truncation of the contour rays
  double sigma_decay_log = 36.0;  // left cutoff: |sigma| < e^{-this}
  double domain_decay_log = 24.0; // right cutoff of the x domain: e^{-this}
  double x_panel_scale = 1.0;     // <1 refines the spatial quadrature panels
  bool conjugate_symmetry = false;  // evaluate upper half only, double Re part
  double csc_R = 0.0;             // 0 = automatic max(5, 7.9/sqrt(T))
  // small-kappa vertical contour: line position as a fraction of the
  // pole-free bound, truncation as a multiple of e^{a}, panel width as a
  // fraction of the local scale delta + |Im mu|
  double vertical_delta_frac = 0.5;
  double vertical_span = 2.5;
  double vertical_panel_frac = 0.35;
};

// Nodes mu_m with coefficients q_m such that  sum_m q_m g(mu_m)  approximates
// (1/2 pi i) int_C g(mu) e^{-mu} dmu / mu  on the contour
// {e^{i theta}}_{pi/2..3pi/2} \cup {x +- i}_{0<x<xmax}, counterclockwise
// (inbound on the upper ray, outbound on the lower).
struct MuContour {
  std::vector<cd> nodes;
  std::vector<cd> coeff;
  double constant = 0.0;  // added to the quadrature sum (folded-in residues)
};
MuContour mu_contour(double xmax, bool upper_half_only = false);

// Bromwich-type alternative: vertical line Re mu = delta truncated at
// |Im mu| <= ymax, with the mu = 0 residue folded into `constant`.  Valid
// whenever the sigma-pole branch cut (which starts near e^{a - 26 kappa})
// lies to the right of delta; used at small T where the determinant's
// transient growth makes the rightward-opening contour ill-conditioned.
MuContour mu_contour_vertical(double delta, double ymax,
                              bool upper_half_only = false,
                              double panel_frac = 0.35);

// Crossover Airy kernel route: half-line determinant on L^2(a/kappa, inf).
FtResult f_t_airy(double T, double s, const Config& cfg = {});

// Symmetrized full-line route (same formula, full-line determinant).
FtResult f_t_airy_sym(double T, double s, const Config& cfg = {});

// Cosecant kernel route.
FtResult f_t_csc(double T, double s, const Config& cfg = {});

// Gumbel convolution route: F_T(s) = 1 - int G(a - rho) f(rho) d rho.  The
// s-independent f-table is cached per T for the lifetime of the process.
FtResult f_t_gumbel(double T, double s, const Config& cfg = {});

// density-like factor f(rho) = kappa^{-1} det(I - K_{sigma_T})
//   tr((I - K_{sigma_T})^{-1} P_Ai)  on L^2(rho/kappa, inf)
double gumbel_f(double T, double rho, const Config& cfg = {});

// Tracy-Widom GUE distribution F_GUE(s) = det(I - K_Ai) on L^2(s, inf).
double f_gue(double s, int nodes = 0);

// int sigma(t) Ai(x+t) Ai(y+t) dt determinant on L^2(r, inf) for the
// crossover profile at real negative mu (Painleve dual-route check).
double half_line_det(double T, double r, cd mu);

struct ScanRow {
  double s = 0.0;
  double f_t = 0.0;
  double limit = 0.0;
  double deviation = 0.0;
};

// F_T(T^{1/3} s) vs F_GUE(2^{1/3} s) over an s-grid (large-T limit).
std::vector<ScanRow> tw_limit_scan(double T, double s_lo, double s_hi,
                                   double step, const Config& cfg = {});

// F_T(2^{-1/2} pi^{1/4} T^{1/4} s) vs Phi(s) over an s-grid (small-T limit).
std::vector<ScanRow> gaussian_limit_scan(double T, double s_lo, double s_hi,
                                         double step, const Config& cfg = {});

// T^{-1/2} int_0^T int_R [p(T-S,X-Y) p(S,Y) / p(T,X)]^2 dY dS; equals
// sqrt(pi)/2 for every (T, X).
double variance_constant(double T, double X);

// Scaling map beta -> (beta^4 T, beta^2 X) under which the free-energy law
// with coupling beta reduces to the beta = 1 case.
inline double beta_mapped_time(double beta, double T) { return beta * beta * beta * beta * T; }
inline double beta_mapped_position(double beta, double X) { return beta * beta * X; }

} // namespace kpz::crossover
