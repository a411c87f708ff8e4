#pragma once

#include <complex>
#include <vector>

// Integro-differential oracle for the half-line determinants: the field
// q_t(r) solves  q_t'' = (r + t + 2 int sigma'(t) q_t^2 dt) q_t  with
// q_t ~ Ai(t + r) at r -> +infinity, and
//   det(I - K_sigma)_{L^2(r, inf)}
//     = exp(-int_r^inf (x - r) int sigma'(t) q_t^2(x) dt dx).
// The step profile sigma = 1_{[0,inf)} reduces to the Hastings-McLeod
// Painleve II solution and the Tracy-Widom representation.

namespace kpz::painleve {

struct Grids {
  double r_min = -6.0;
  double r_max = 12.0;
  double h = 1.0 / 64.0;   // Numerov step
  int t_panels = 24;       // composite GL panels for the sigma' integral
  int t_per_panel = 4;
  double t_halfwidth_kappa = 30.0;  // t-range: t0 +- this / kappa
};

struct QField {
  std::vector<double> r;         // ascending uniform grid
  std::vector<double> coupling;  // c(r) = 2 int sigma'(t) q_t(r)^2 dt
  double h = 0.0;

  // q_t(r) for the t-nodes used internally (kept for diagnostics/tests)
  std::vector<double> t_nodes, t_weights;
  std::vector<std::vector<double>> q;  // q[t-index][r-index]

  [[nodiscard]] double q_at(int t_index, double r_value) const;
};

// Crossover profile sigma_{T,mu}, real mu < 0 (the validated regime).
QField solve_q(double T, double mu, const Grids& grids = {});

// Step profile: sigma' = delta_0, i.e. plain Painleve II with Ai asymptotics.
QField solve_q_step(const Grids& grids = {});

// det(I - K_sigma)_{L^2(r, inf)} from the field; r must lie inside
// [r_min, r_max - 1] (linear interpolation between grid cells at the start
// segment, trapezoid on the uniform grid elsewhere).
double det_from_q(const QField& field, double r);

// d^2/dr^2 log det = -c(r)/2, exposed for the identity test.
double log_det_second_derivative(const QField& field, double r);

} // namespace kpz::painleve
