#include "kpz/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kpz/kernels.hpp"
#include "kpz/quadrature.hpp"
#include "kpz/specfun.hpp"

namespace kpz::painleve {

namespace {

// Numerov march of q'' = (r + t + c(r)) q from r_max downward; the Ai-type
// solution grows in this direction, so the march is stable.
void numerov_down(const std::vector<double>& r, const std::vector<double>& c,
                  double t, double h, std::vector<double>& q) {
  const int n = static_cast<int>(r.size());
  q.assign(n, 0.0);
  auto f = [&](int idx) { return r[idx] + t + c[idx]; };
  q[n - 1] = specfun::airy_ai(t + r[n - 1]);
  q[n - 2] = specfun::airy_ai(t + r[n - 2]);
  const double h2 = h * h;
  for (int i = n - 3; i >= 0; --i) {
    const double a0 = 1.0 - (h2 / 12.0) * f(i);
    const double a1 = 2.0 * (1.0 + (5.0 * h2 / 12.0) * f(i + 1));
    const double a2 = 1.0 - (h2 / 12.0) * f(i + 2);
    q[i] = (a1 * q[i + 1] - a2 * q[i + 2]) / a0;
  }
}

QField picard(const std::vector<double>& tn, const std::vector<double>& tw,
              const std::vector<double>& sigp, const Grids& g) {
  QField fld;
  fld.h = g.h;
  const int n = static_cast<int>(std::lround((g.r_max - g.r_min) / g.h)) + 1;
  fld.r.resize(n);
  for (int i = 0; i < n; ++i) fld.r[i] = g.r_min + i * g.h;
  fld.t_nodes = tn;
  fld.t_weights = tw;
  fld.coupling.assign(n, 0.0);
  fld.q.assign(tn.size(), {});
  std::vector<double> cnew(n);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    for (size_t j = 0; j < tn.size(); ++j)
      numerov_down(fld.r, fld.coupling, tn[j], g.h, fld.q[j]);
    double diff = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (size_t j = 0; j < tn.size(); ++j)
        s += tw[j] * sigp[j] * fld.q[j][i] * fld.q[j][i];
      cnew[i] = 2.0 * s;
      diff = std::max(diff, std::abs(cnew[i] - fld.coupling[i]));
    }
    for (int i = 0; i < n; ++i)
      fld.coupling[i] = 0.5 * fld.coupling[i] + 0.5 * cnew[i];
    if (diff < 1e-11) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw std::runtime_error("painleve: Picard iteration did not converge");
  return fld;
}

} // namespace

double QField::q_at(int t_index, double r_value) const {
  const double pos = (r_value - r.front()) / h;
  const int i = std::clamp(static_cast<int>(pos), 0,
                           static_cast<int>(r.size()) - 2);
  const double frac = pos - i;
  return (1.0 - frac) * q[t_index][i] + frac * q[t_index][i + 1];
}

QField solve_q(double T, double mu, const Grids& g) {
  if (mu >= 0.0)
    throw std::invalid_argument("solve_q: mu must be real negative");
  const double kappa = std::cbrt(T / 2.0);
  const double t0 = -std::log(-mu) / kappa;
  const double hw = g.t_halfwidth_kappa / kappa;
  const quadrature::Rule tr =
      quadrature::composite_gl(g.t_per_panel, g.t_panels, t0 - hw, t0 + hw);
  std::vector<double> sigp(tr.size());
  for (int k = 0; k < tr.size(); ++k)
    sigp[k] =
        kernels::sigma_crossover_prime(tr.nodes[k], kappa, std::complex<double>(mu))
            .real();
  return picard(tr.nodes, tr.weights, sigp, g);
}

QField solve_q_step(const Grids& g) {
  return picard({0.0}, {1.0}, {1.0}, g);
}

double det_from_q(const QField& f, double r) {
  const int n = static_cast<int>(f.r.size());
  if (r < f.r.front() || r > f.r.back() - 1.0)
    throw std::invalid_argument("det_from_q: r outside the field grid");
  // integral int_r^{rmax} (x - r) c(x)/2 dx, trapezoid on the uniform grid
  // plus an initial partial cell
  const double pos = (r - f.r.front()) / f.h;
  int i0 = static_cast<int>(std::ceil(pos - 1e-12));
  double integral = 0.0;
  auto g = [&](int i) { return (f.r[i] - r) * 0.5 * f.coupling[i]; };
  if (i0 > 0 && f.r[i0] > r + 1e-15) {
    // partial cell [r, r_{i0}]: integrand vanishes linearly at x = r
    const double w = f.r[i0] - r;
    integral += 0.5 * w * g(i0);
  }
  for (int i = i0; i < n - 1; ++i)
    integral += 0.5 * f.h * (g(i) + g(i + 1));
  // Euler-Maclaurin endpoint correction lifts the trapezoid to O(h^4)
  if (n - 1 - i0 >= 3) {
    const double gp_lo =
        (-1.5 * g(i0) + 2.0 * g(i0 + 1) - 0.5 * g(i0 + 2)) / f.h;
    const double gp_hi =
        (1.5 * g(n - 1) - 2.0 * g(n - 2) + 0.5 * g(n - 3)) / f.h;
    integral -= f.h * f.h / 12.0 * (gp_hi - gp_lo);
  }
  // the crossover coupling decays only exponentially (~e^{-kappa x}); close
  // the truncated integral with the fitted tail
  const int m = std::min(32, n / 4);
  const double c_end = f.coupling[n - 1];
  if (c_end > 1e-14 && f.coupling[n - 1 - m] > c_end) {
    const double rate = std::log(f.coupling[n - 1 - m] / c_end) / (m * f.h);
    if (std::isfinite(rate) && rate > 1e-3)
      integral += 0.5 * c_end *
                  ((f.r[n - 1] - r) / rate + 1.0 / (rate * rate));
  }
  return std::exp(-integral);
}

double log_det_second_derivative(const QField& f, double r) {
  const double pos = (r - f.r.front()) / f.h;
  const int i = std::clamp(static_cast<int>(pos), 0,
                           static_cast<int>(f.r.size()) - 2);
  const double frac = pos - i;
  return -0.5 *
         ((1.0 - frac) * f.coupling[i] + frac * f.coupling[i + 1]);
}

} // namespace kpz::painleve
