#include "kpz/crossover.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "kpz/fredholm.hpp"
#include "kpz/specfun.hpp"

namespace kpz::crossover {

namespace {

constexpr double kCbrt2 = 1.2599210498948731648;

// spatial rule on [lo, hi]: oscillation-resolved panels below zero (Airy
// wavelength ~ pi/sqrt(|x|)), geometrically widening panels above
quadrature::Rule build_x_rule(double lo, double hi, double panel_scale = 1.0) {
  quadrature::Rule r;
  double x = lo;
  double smooth_w = 1.2;
  while (x < hi - 1e-12) {
    double w;
    if (x < 0.0) {
      w = std::clamp(8.0 / (2.0 * std::sqrt(-x) + 1.0), 0.25, 1.2);
    } else {
      w = smooth_w;
      smooth_w = std::min(4.0, smooth_w * 1.3);
    }
    w = std::min(w * panel_scale, hi - x);
    r = quadrature::concat(std::move(r), quadrature::gauss_legendre(10, x, x + w));
    x += w;
  }
  return r;
}

struct ContourAccum {
  cd integral{0.0};
  bool half = false;
  double constant = 0.0;
  double value() const {
    return constant + (half ? 2.0 * integral.real() : integral.real());
  }
  double residual() const { return half ? 0.0 : std::abs(integral.imag()); }
};

} // namespace

MuContour mu_contour(double xmax, bool upper_half_only) {
  MuContour c;
  const cd I(0.0, 1.0);
  const cd inv2pii = 1.0 / (2.0 * M_PI * I);
  auto add_ray = [&](double sign_im, double direction) {
    quadrature::Rule r = quadrature::gauss_legendre(12, 0.0, 2.0);
    r = quadrature::concat(std::move(r), quadrature::gauss_legendre(12, 2.0, 6.0));
    if (xmax > 6.0) {
      const double mid = std::min(12.0, xmax);
      r = quadrature::concat(std::move(r),
                             quadrature::gauss_legendre(10, 6.0, mid));
      // march beyond 12 in bounded panels: for long rays (small T) the
      // integrand rises to a peak near e^{a} before decaying, and a single
      // wide panel cannot track it
      double x = mid;
      while (x < xmax - 1e-9) {
        const double w = std::min(8.0, xmax - x);
        r = quadrature::concat(std::move(r),
                               quadrature::gauss_legendre(10, x, x + w));
        x += w;
      }
    }
    for (int k = 0; k < r.size(); ++k) {
      const cd mu = cd(r.nodes[k], sign_im);
      c.nodes.push_back(mu);
      c.coeff.push_back(direction * r.weights[k] * std::exp(-mu) / mu * inv2pii);
    }
  };
  auto add_arc = [&](double th_lo, double th_hi) {
    const quadrature::Rule r = quadrature::gauss_legendre(24, th_lo, th_hi);
    for (int k = 0; k < r.size(); ++k) {
      const cd mu = std::exp(I * r.nodes[k]);
      c.nodes.push_back(mu);
      // d mu = i e^{i theta} d theta, and e^{-mu}/mu cancels the e^{i theta}
      c.coeff.push_back(r.weights[k] * I * std::exp(-mu) * inv2pii);
    }
  };
  add_ray(+1.0, -1.0);  // inbound along x + i
  if (upper_half_only) {
    add_arc(M_PI / 2.0, M_PI);
    return c;
  }
  add_arc(M_PI / 2.0, 3.0 * M_PI / 2.0);
  add_ray(-1.0, +1.0);  // outbound along x - i
  return c;
}

MuContour mu_contour_vertical(double delta, double ymax, bool upper_half_only,
                              double panel_frac) {
  // deforming the standard contour onto the upward line Re mu = delta sweeps
  // through the simple pole at mu = 0 (residue det|_{mu=0} = 1), and flips
  // orientation:  integral = 1 - (1/2 pi i) int_{delta - i inf}^{delta + i inf}
  MuContour c;
  // Past ymax the path bends rightward with slope dRe/dIm = beta so that
  // e^{-mu} damps the slowly decaying (det - 1)/mu tail exponentially; it
  // never touches the positive real axis, where all singularities lie.
  const double beta = 0.5;
  const double re_max = 20.0;
  auto add_half = [&](double sign) {
    // panels graded to the local scale of both the e^{-i y} oscillation and
    // the determinant's variation (~ a fixed fraction of an e-fold in |mu|)
    double y = 0.0;
    const double yend = ymax + (re_max - delta) / beta;
    while (y < yend - 1e-12) {
      const double w = std::min(
          {std::max(panel_frac * (delta + y), panel_frac * delta), 5.0,
           yend - y});
      const quadrature::Rule p = quadrature::gauss_legendre(12, y, y + w);
      for (int k = 0; k < p.size(); ++k) {
        const double yk = p.nodes[k];
        const double tilt = std::max(yk - ymax, 0.0);
        const cd mu(delta + beta * tilt, sign * yk);
        const cd dmu = tilt > 0.0 ? cd(beta, sign) : cd(0.0, sign);
        c.nodes.push_back(mu);
        c.coeff.push_back(-p.weights[k] * dmu / (2.0 * M_PI * cd(0.0, sign)) *
                          std::exp(-mu) / mu);
      }
      y += w;
    }
  };
  add_half(+1.0);
  if (!upper_half_only) add_half(-1.0);
  // e^{-mu}/mu alone integrates to zero along the full line (close the
  // contour to the right; the pole sits to the left).  Folding the quadrature
  // value of that piece into the constant makes the contour sum effectively
  // integrate det - 1, which decays fast in |Im mu|, instead of carrying the
  // slowly decaying O(1/|mu|) tail past the truncation point.
  cd csum = 0.0;
  for (const cd& w : c.coeff) csum += w;
  c.constant = 1.0 - (upper_half_only ? 2.0 * csum.real() : csum.real());
  return c;
}

FtResult f_t_airy(double T, double s, const Config& cfg) {
  const kernels::Params par{T, s};
  const double kappa = par.kappa();
  const double sbar = par.s_phys();
  const double L = 10.0 + cfg.domain_decay_log / kappa;
  const quadrature::Rule xr =
      build_x_rule(sbar, sbar + L, cfg.x_panel_scale);
  // At small kappa the horseshoe contour is ill-conditioned: |e^{-mu} det|
  // rises to a transient peak ~e^{8} near |mu| ~ e^{a} before decaying, so the
  // tiny final value requires unattainable relative accuracy along the rays.
  // The mu-plane singularities of the determinant stay out of reach of a
  // vertical line Re mu = delta as long as delta < e^{-kappa*t_hi} with t_hi
  // the right edge of the t grid; sweeping the horseshoe across
  // mu = 0 to that line picks up the residue det|_{mu=0} = 1 (the folded-in
  // MuContour::constant). On the line the integrand stays O(1).
  MuContour mc;
  double logmu_max;
  if (kappa < 0.2) {
    const double mu_c = std::exp(-kappa * (26.0 - sbar));
    const double delta = cfg.vertical_delta_frac * mu_c;
    const double ymax = std::max(cfg.vertical_span * std::exp(par.a()), 1.0);
    mc = mu_contour_vertical(delta, ymax, cfg.conjugate_symmetry,
                             cfg.vertical_panel_frac);
    double mu_abs_max = 1.0;
    for (const cd& mu : mc.nodes) mu_abs_max = std::max(mu_abs_max, std::abs(mu));
    logmu_max = std::log(mu_abs_max);
  } else {
    mc = mu_contour(cfg.mu_ray_xmax, cfg.conjugate_symmetry);
    logmu_max =
        0.5 * std::log(cfg.mu_ray_xmax * cfg.mu_ray_xmax + 1.0);
  }
  const double t_lo = -(cfg.sigma_decay_log + logmu_max) / kappa;
  const double t_hi = 26.0 - sbar;
  const kernels::AiryFactor af = kernels::AiryFactor::build(
      xr.nodes,
      kernels::airy_t_grid_sigma(sbar, t_lo, t_hi, kappa, logmu_max));
  ContourAccum acc;
  acc.half = cfg.conjugate_symmetry;
  acc.constant = mc.constant;
  std::vector<cd> sig(af.nt);
  for (size_t m = 0; m < mc.nodes.size(); ++m) {
    for (int k = 0; k < af.nt; ++k)
      sig[k] = kernels::sigma_crossover(af.tgrid.nodes[k], kappa, mc.nodes[m]);
    const linalg::Matrix K = af.assemble(sig);
    acc.integral += mc.coeff[m] * fredholm::det_matrix(K, xr);
  }
  return {acc.value(), acc.residual()};
}

FtResult f_t_airy_sym(double T, double s, const Config& cfg) {
  const kernels::Params par{T, s};
  const double kappa = par.kappa();
  const double sbar = par.s_phys();
  const MuContour mc = mu_contour(cfg.mu_ray_xmax, cfg.conjugate_symmetry);
  ContourAccum acc;
  acc.half = cfg.conjugate_symmetry;
  for (size_t m = 0; m < mc.nodes.size(); ++m) {
    const cd mu = mc.nodes[m];
    const double t0 = -std::log(std::abs(mu)) / kappa;
    const double x_lo = sbar + t0 - cfg.sigma_decay_log / kappa;
    const double x_hi = std::max({10.0, sbar + t0 + 5.0, sbar + 5.0});
    const quadrature::Rule xr = build_x_rule(x_lo, x_hi);
    const int n = xr.size();
    std::vector<double> ai(n), aip(n);
    std::vector<cd> sq(n);
    for (int i = 0; i < n; ++i) {
      ai[i] = specfun::airy_ai(xr.nodes[i]);
      aip[i] = specfun::airy_ai_prime(xr.nodes[i]);
      sq[i] = std::sqrt(kernels::sigma_crossover(xr.nodes[i] - sbar, kappa, mu));
    }
    linalg::Matrix K(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double kai;
        if (i == j) {
          kai = aip[i] * aip[i] - xr.nodes[i] * ai[i] * ai[i];
        } else {
          kai = (ai[i] * aip[j] - aip[i] * ai[j]) / (xr.nodes[i] - xr.nodes[j]);
        }
        K(i, j) = sq[i] * kai * sq[j];
      }
    acc.integral += mc.coeff[m] * fredholm::det_matrix(K, xr);
  }
  return {acc.value(), acc.residual()};
}

FtResult f_t_csc(double T, double s, const Config& cfg) {
  const kernels::Params par{T, s};
  const double R = cfg.csc_R > 0.0 ? cfg.csc_R : std::max(5.0, 7.9 / std::sqrt(T));
  const kernels::CosecantSystem sys = kernels::build_cosecant_system(T, par.a(), R);
  const MuContour mc = mu_contour(cfg.mu_ray_xmax, cfg.conjugate_symmetry);
  ContourAccum acc;
  acc.half = cfg.conjugate_symmetry;
  for (size_t m = 0; m < mc.nodes.size(); ++m)
    acc.integral += mc.coeff[m] * kernels::cosecant_det(sys, mc.nodes[m]);
  return {acc.value(), acc.residual()};
}

double gumbel_f(double T, double rho, const Config& cfg) {
  const double kappa = std::cbrt(T / 2.0);
  const double x0 = rho / kappa;
  const double L = 10.0 + 24.0 / kappa;
  const quadrature::Rule xr = build_x_rule(x0, x0 + L);
  const quadrature::Rule tg =
      kernels::airy_t_grid(x0, -(cfg.sigma_decay_log + 6.0) / kappa, 26.0 - x0,
                           /*pole_at_zero=*/true);
  const kernels::AiryFactor af = kernels::AiryFactor::build(xr.nodes, tg);
  std::vector<double> sig(af.nt);
  for (int k = 0; k < af.nt; ++k)
    sig[k] = kernels::sigma_gumbel(af.tgrid.nodes[k], kappa);
  const std::vector<double> kr = af.assemble_real(sig);
  const int n = xr.size();
  linalg::Matrix K(n);
  for (size_t p = 0; p < kr.size(); ++p) K.a[p] = cd(kr[p]);
  const cd det = fredholm::det_matrix(K, xr);
  std::vector<cd> u(n);
  for (int i = 0; i < n; ++i) u[i] = cd(specfun::airy_ai(xr.nodes[i]));
  const cd tr = fredholm::resolvent_rank_one_trace_matrix(K, u, u, xr);
  return (det * tr).real() / kappa;
}

namespace {

struct FTable {
  quadrature::Rule rho_rule;
  std::vector<double> f;
};

const FTable& f_table(double T, const Config& cfg) {
  static std::map<double, FTable> cache;
  auto it = cache.find(T);
  if (it != cache.end()) return it->second;
  FTable tab;
  tab.rho_rule = quadrature::composite_gl(8, 23, -9.5, 13.5);
  tab.f.resize(tab.rho_rule.size());
  for (int k = 0; k < tab.rho_rule.size(); ++k)
    tab.f[k] = gumbel_f(T, tab.rho_rule.nodes[k], cfg);
  return cache.emplace(T, std::move(tab)).first->second;
}

} // namespace

FtResult f_t_gumbel(double T, double s, const Config& cfg) {
  const kernels::Params par{T, s};
  const double a = par.a();
  const FTable& tab = f_table(T, cfg);
  double conv = 0.0;
  for (int k = 0; k < tab.rho_rule.size(); ++k)
    conv += tab.rho_rule.weights[k] *
            specfun::gumbel_weight(tab.rho_rule.nodes[k] - a) * tab.f[k];
  return {1.0 - conv, 0.0};
}

double f_gue(double s, int nodes) {
  const double hi = std::max(8.0, s + 14.0);
  quadrature::Rule xr;
  if (nodes > 0) {
    xr = quadrature::gauss_legendre(nodes, s, hi);
  } else {
    xr = build_x_rule(s, hi);
  }
  return fredholm::det(
             [](double x, double y) { return cd(kernels::airy_kernel(x, y)); },
             xr)
      .real();
}

double half_line_det(double T, double r, cd mu) {
  const double kappa = std::cbrt(T / 2.0);
  const double L = 10.0 + 24.0 / kappa;
  const quadrature::Rule xr = build_x_rule(r, r + L);
  const double t_lo = -(40.0 + std::abs(std::log(std::abs(mu)))) / kappa;
  const kernels::AiryFactor af =
      kernels::AiryFactor::build(xr.nodes, kernels::airy_t_grid(r, t_lo, 26.0 - r));
  std::vector<cd> sig(af.nt);
  for (int k = 0; k < af.nt; ++k)
    sig[k] = kernels::sigma_crossover(af.tgrid.nodes[k], kappa, mu);
  const linalg::Matrix K = af.assemble(sig);
  return fredholm::det_matrix(K, xr).real();
}

std::vector<ScanRow> tw_limit_scan(double T, double s_lo, double s_hi,
                                   double step, const Config& cfg) {
  std::vector<ScanRow> rows;
  for (double s = s_lo; s <= s_hi + 1e-9; s += step) {
    ScanRow row;
    row.s = s;
    row.f_t = f_t_airy(T, std::cbrt(T) * s, cfg).value;
    row.limit = f_gue(kCbrt2 * s);
    row.deviation = row.f_t - row.limit;
    rows.push_back(row);
  }
  return rows;
}

std::vector<ScanRow> gaussian_limit_scan(double T, double s_lo, double s_hi,
                                         double step, const Config& cfg) {
  std::vector<ScanRow> rows;
  const double scale = std::pow(M_PI, 0.25) / std::sqrt(2.0) * std::pow(T, 0.25);
  for (double s = s_lo; s <= s_hi + 1e-9; s += step) {
    ScanRow row;
    row.s = s;
    row.f_t = f_t_airy(T, scale * s, cfg).value;
    row.limit = specfun::gaussian_cdf(s);
    row.deviation = row.f_t - row.limit;
    rows.push_back(row);
  }
  return rows;
}

double variance_constant(double T, double X) {
  // S = T sin^2(theta) removes the inverse-square-root endpoint singularities
  const quadrature::Rule th = quadrature::gauss_legendre(48, 0.0, M_PI / 2.0);
  double outer = 0.0;
  for (int i = 0; i < th.size(); ++i) {
    const double sn = std::sin(th.nodes[i]), cs = std::cos(th.nodes[i]);
    const double S = T * sn * sn;
    const double dS = 2.0 * T * sn * cs;
    if (S <= 0.0 || S >= T) continue;
    const double center = X * S / T;
    const double width = std::sqrt(S * (T - S) / (2.0 * T));
    const quadrature::Rule yr =
        quadrature::gauss_legendre(40, center - 8.0 * width, center + 8.0 * width);
    double inner = 0.0;
    for (int k = 0; k < yr.size(); ++k) {
      const double Y = yr.nodes[k];
      const double expo = -(X - Y) * (X - Y) / (T - S) - Y * Y / S + X * X / T;
      inner += yr.weights[k] * std::exp(expo);
    }
    outer += th.weights[i] * dS * inner * T / (2.0 * M_PI * S * (T - S));
  }
  return outer / std::sqrt(T);
}

} // namespace kpz::crossover
