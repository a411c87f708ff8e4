#include "kpz/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kpz/specfun.hpp"

namespace kpz::kernels {

namespace {

constexpr double kCbrt2 = 1.2599210498948731648;  // 2^{1/3}
constexpr double kC3 = 0.39685026299204986870;    // 2^{-4/3}

// Sine and cosine integrals Si(x), Ci(x) for x > 0: power series below 2,
// Lentz continued fraction for the auxiliary complex exponential integral
// above (classic cisi construction).
void cisi(double x, double& si, double& ci) {
  const double eps = 1e-15;
  if (x < 1e-30) {
    si = 0.0;
    ci = -1e30;
    return;
  }
  if (x <= 2.0) {
    double sum_s = 0.0, sum_c = 0.0, term = x, x2 = x * x;
    // Si series: sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    for (int k = 0; k < 40; ++k) {
      sum_s += term / (2 * k + 1);
      term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
      if (std::abs(term) < eps) break;
    }
    // Cin series: sum (-1)^{k+1} x^{2k} / (2k (2k)!)
    term = -x2 / 2.0;
    for (int k = 1; k < 40; ++k) {
      sum_c += term / (2 * k);
      term *= -x2 / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
      if (std::abs(term) < eps) break;
    }
    const double euler = 0.57721566490153286;
    si = sum_s;
    ci = euler + std::log(x) + sum_c;
    return;
  }
  // continued fraction for E1-type auxiliary: h = Ci(x) + i(Si(x) - pi/2)
  std::complex<double> b(1.0, x), c(1e300, 0.0);
  std::complex<double> d = 1.0 / b, h = d;
  for (int i = 1; i < 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) break;
  }
  h *= std::complex<double>(std::cos(x), -std::sin(x));
  ci = -h.real();
  si = M_PI / 2.0 + h.imag();
}

// int_W^inf cos(beta w + phase0) / w^2 dw, beta >= 0, W > 0.
double cos_tail_over_w2(double beta, double phase0, double W) {
  double si = 0.0, ci = 0.0;
  if (beta > 0.0) cisi(beta * W, si, ci);
  const double icos = std::cos(beta * W) / W - beta * (M_PI / 2.0 - si);
  const double isin = std::sin(beta * W) / W - beta * ci;
  return std::cos(phase0) * icos - std::sin(phase0) * isin;
}

} // namespace

double Params::kappa() const { return std::cbrt(T / 2.0); }
double Params::a() const { return s - 0.5 * std::log(2.0 * M_PI * T); }

cd sigma_crossover(double t, double kappa, cd mu) {
  const double u = kappa * t;
  if (u < -690.0) return cd(0.0);  // ~ -mu e^{kappa t}, below underflow
  return mu / (mu - std::exp(-u));
}

cd sigma_crossover_prime(double t, double kappa, cd mu) {
  const double u = kappa * t;
  if (u < -690.0) return cd(0.0);
  const cd den = mu - std::exp(-u);
  return -mu * kappa * std::exp(-u) / (den * den);
}

double sigma_gumbel(double t, double kappa) {
  const double u = kappa * t;
  if (u < -36.0) return -std::exp(u);
  if (u == 0.0) throw std::invalid_argument("sigma_gumbel: pole at t = 0");
  return 1.0 / (1.0 - std::exp(-u));
}

double sigma_gumbel_tilde(double t, double kappa) {
  const double u = kappa * t;
  if (std::abs(u) < 1e-2) {
    const double u2 = u * u;
    return 0.5 + u / 12.0 - u * u2 / 720.0 + u2 * u2 * u / 30240.0;
  }
  if (u < -36.0) return -std::exp(u) - 1.0 / u;
  if (u > 36.0) return 1.0 - 1.0 / u;
  return 1.0 / (1.0 - std::exp(-u)) - 1.0 / u;
}

double airy_kernel(double x, double y) {
  using specfun::airy_ai;
  using specfun::airy_ai_prime;
  if (std::abs(x - y) < 1e-7) {
    const double m = 0.5 * (x + y);
    const double ai = airy_ai(m), aip = airy_ai_prime(m);
    return aip * aip - m * ai * ai;
  }
  return (airy_ai(x) * airy_ai_prime(y) - airy_ai_prime(x) * airy_ai(y)) /
         (x - y);
}

quadrature::Rule airy_t_grid(double x_min, double t_lo, double t_hi,
                             bool pole_at_zero) {
  if (t_lo >= t_hi) throw std::invalid_argument("airy_t_grid: empty range");
  quadrature::Rule r;
  auto width_at = [&](double t) {
    const double osc = 2.0 * std::sqrt(std::max(0.0, -(x_min + t)));
    return std::clamp(8.0 / std::max(osc, 1e-3), 0.05, 1.5);
  };
  auto march = [&](double from, double to) {  // from > to
    double t = from;
    while (t > to + 1e-12) {
      const double next = std::max(to, t - width_at(t));
      r = quadrature::concat(std::move(r), quadrature::gauss_legendre(12, next, t));
      t = next;
    }
  };
  if (!pole_at_zero || t_lo >= 0.0 || t_hi <= 0.0) {
    march(t_hi, t_lo);
    return r;
  }
  // symmetric dyadic refinement about the pole at t = 0: the innermost
  // window |t| < 2^{-22} is dropped (its principal value vanishes to the
  // accuracy of the smooth part), mirrored panels cancel the pole pairwise
  const double rad = std::min({1.0, t_hi, -t_lo});
  march(t_hi, rad);
  double e = rad;
  for (int k = 0; k < 40 && e > 2.4e-7; ++k) {
    const double e2 = e / 2.0;
    r = quadrature::concat(std::move(r), quadrature::gauss_legendre(8, e2, e));
    r = quadrature::concat(std::move(r), quadrature::gauss_legendre(8, -e, -e2));
    e = e2;
  }
  march(-rad, t_lo);
  return r;
}

quadrature::Rule airy_t_grid_sigma(double x_min, double t_lo, double t_hi,
                                   double kappa, double log_mu_max) {
  if (t_lo >= t_hi) throw std::invalid_argument("airy_t_grid_sigma: empty range");
  // sigma_{T,mu} has a complex pole at t = -Log(mu)/kappa; for contour points
  // mu = x +- i the pole sits at height atan(1/x)/kappa ~ e^{kappa t}/kappa
  // above the real axis, so panels must shrink accordingly inside the band
  // t in (-log|mu|_max / kappa, 0) where poles can live
  const double t_pole_min = -log_mu_max / kappa;
  auto pole_width = [&](double t) {
    const double tc = std::clamp(t, t_pole_min, 0.0);
    const double dist = std::max(t_pole_min - t, t - 0.0);
    return 0.5 * (std::exp(kappa * tc) / kappa + std::max(0.0, dist));
  };
  quadrature::Rule r;
  auto width_at = [&](double t) {
    const double osc = 2.0 * std::sqrt(std::max(0.0, -(x_min + t)));
    const double w_osc = 8.0 / std::max(osc, 1e-3);
    return std::clamp(std::min(w_osc, pole_width(t)), 0.02, 1.5);
  };
  double t = t_hi;
  while (t > t_lo + 1e-12) {
    const double next = std::max(t_lo, t - width_at(t));
    r = quadrature::concat(std::move(r), quadrature::gauss_legendre(12, next, t));
    t = next;
  }
  return r;
}

AiryFactor AiryFactor::build(const std::vector<double>& x, quadrature::Rule tg) {
  AiryFactor f;
  f.n = static_cast<int>(x.size());
  f.nt = tg.size();
  f.tgrid = std::move(tg);
  f.A.resize(static_cast<size_t>(f.n) * f.nt);
  for (int i = 0; i < f.n; ++i)
    for (int k = 0; k < f.nt; ++k)
      f.A[static_cast<size_t>(i) * f.nt + k] =
          specfun::airy_ai(x[i] + f.tgrid.nodes[k]);
  return f;
}

linalg::Matrix AiryFactor::assemble(const std::vector<cd>& sigma_at_t) const {
  std::vector<double> dre(nt), dim(nt);
  bool has_im = false;
  for (int k = 0; k < nt; ++k) {
    dre[k] = tgrid.weights[k] * sigma_at_t[k].real();
    dim[k] = tgrid.weights[k] * sigma_at_t[k].imag();
    has_im = has_im || dim[k] != 0.0;
  }
  std::vector<double> kre(static_cast<size_t>(n) * n, 0.0);
  linalg::add_adat(kre, n, A, nt, dre, 1.0);
  std::vector<double> kim;
  if (has_im) {
    kim.assign(static_cast<size_t>(n) * n, 0.0);
    linalg::add_adat(kim, n, A, nt, dim, 1.0);
  }
  linalg::Matrix K(n);
  for (size_t p = 0; p < kre.size(); ++p)
    K.a[p] = cd(kre[p], has_im ? kim[p] : 0.0);
  return K;
}

std::vector<double> AiryFactor::assemble_real(
    const std::vector<double>& sigma_at_t) const {
  std::vector<double> d(nt);
  for (int k = 0; k < nt; ++k) d[k] = tgrid.weights[k] * sigma_at_t[k];
  std::vector<double> K(static_cast<size_t>(n) * n, 0.0);
  linalg::add_adat(K, n, A, nt, d, 1.0);
  return K;
}

cd crossover_airy_kernel(double x, double y, double T, cd mu) {
  const double kappa = std::cbrt(T / 2.0);
  const double xm = std::min(x, y);
  const double t_lo = -(40.0 + std::max(0.0, std::log(std::abs(mu)))) / kappa;
  const double t_hi = 26.0 - xm;
  const quadrature::Rule g = airy_t_grid(xm, t_lo, t_hi);
  cd sum(0.0);
  for (int k = 0; k < g.size(); ++k) {
    const double t = g.nodes[k];
    sum += g.weights[k] * sigma_crossover(t, kappa, mu) *
           specfun::airy_ai(x + t) * specfun::airy_ai(y + t);
  }
  return sum;
}

cd symmetrized_kernel(double x, double y, double sbar, double kappa, cd mu) {
  const cd sx = std::sqrt(sigma_crossover(x - sbar, kappa, mu));
  const cd sy = std::sqrt(sigma_crossover(y - sbar, kappa, mu));
  return sx * airy_kernel(x, y) * sy;
}

double gumbel_kernel_pv(double x, double y, double T) {
  const double kappa = std::cbrt(T / 2.0);
  const double xm = std::min(x, y);
  const double t_lo = -42.0 / kappa;
  const double t_hi = 26.0 - xm;
  const quadrature::Rule g = airy_t_grid(xm, t_lo, t_hi, /*pole_at_zero=*/true);
  double sum = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    const double t = g.nodes[k];
    sum += g.weights[k] * sigma_gumbel(t, kappa) * specfun::airy_ai(x + t) *
           specfun::airy_ai(y + t);
  }
  return sum;
}

double gumbel_kernel_split(double x, double y, double T) {
  // the kernel is symmetric while the averaged-tail beat-phase bookkeeping
  // below assumes x <= y; evaluate on the ordered pair
  if (x > y) std::swap(x, y);
  const double kappa = std::cbrt(T / 2.0);
  const double xm = std::min(x, y);
  // direct region: sigma_tilde is smooth, tail beyond -T0 handled
  // asymptotically
  const double T0 = std::max(25.0, 10.0 - xm);
  const double t_hi = 26.0 - xm;
  const quadrature::Rule g = airy_t_grid(xm, -T0, t_hi);
  double core = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    const double t = g.nodes[k];
    core += g.weights[k] * sigma_gumbel_tilde(t, kappa) *
            specfun::airy_ai(x + t) * specfun::airy_ai(y + t);
  }
  // averaged oscillatory tail, w = sqrt(-t):
  //   Ai(x+t)Ai(y+t) ~ (1/2pi)(v1 v2)^{-1/4} [cos(z1 - z2) + sin(z1 + z2)],
  //   v_i = w^2 - x_i, z_i = (2/3) v_i^{3/2}
  const double beta = std::abs(x - y);
  auto v1 = [&](double w) { return w * w - x; };
  auto v2 = [&](double w) { return w * w - y; };
  auto dphase = [&](double w) {
    return (2.0 / 3.0) * (std::pow(v1(w), 1.5) - std::pow(v2(w), 1.5));
  };
  auto amp = [&](double w) {
    return 2.0 * w * sigma_gumbel_tilde(-w * w, kappa) *
           std::pow(v1(w) * v2(w), -0.25);
  };
  const double w0 = std::sqrt(T0);
  // quadrature range chosen so the analytic remainder (amplitude ~ c/w^2) is
  // below ~1e-7 even for slowly oscillating near-diagonal entries
  const double Wq = std::max(w0 + 12.0, std::min(400.0, 60.0 / (beta + 0.15)));
  double slow = 0.0;
  {
    double w = w0;
    const double pw = std::clamp(8.0 / (beta + 0.2), 0.5, 12.0);
    while (w < Wq) {
      const double wn = std::min(Wq, w + pw);
      const quadrature::Rule p = quadrature::gauss_legendre(10, w, wn);
      for (int k = 0; k < p.size(); ++k)
        slow += p.weights[k] * amp(p.nodes[k]) * std::cos(dphase(p.nodes[k]));
      w = wn;
    }
  }
  // remainder: amp ~ c/w^2, phase ~ beta w + delta
  const double c_amp = amp(Wq) * Wq * Wq;
  const double delta = dphase(Wq) - beta * Wq;
  slow += c_amp * cos_tail_over_w2(beta, delta, Wq);
  // fast (sum-phase) part: one integration-by-parts endpoint term at w0
  const double sum_phase =
      (2.0 / 3.0) * (std::pow(v1(w0), 1.5) + std::pow(v2(w0), 1.5));
  const double sum_rate = 2.0 * w0 * (std::sqrt(v1(w0)) + std::sqrt(v2(w0)));
  const double fast = amp(w0) * std::cos(sum_phase) / sum_rate;
  const double tail = (slow + fast) / (2.0 * M_PI);
  // Hilbert-transform part: PV int Ai(x+t)Ai(y+t)/(kappa t) dt equals
  // -(pi/kappa) G_{(x-y)/2}((x+y)/2); the sign follows from the Fourier pair
  // FT[Ai(.+x)Ai(.+y)](omega) = (4 pi omega)^{-1/2} e^{i phi(omega)} paired
  // against FT[PV 1/t] = -i pi sgn(omega)
  const double gpart =
      -(M_PI / kappa) * quadrature::oscillatory_g((x - y) / 2.0, (x + y) / 2.0);
  return core + tail + gpart;
}

CosecantSystem build_cosecant_system(double T, double a, double R,
                                     double phase_per_panel) {
  CosecantSystem sys;
  sys.T = T;
  sys.a = a;
  sys.R = R;
  // phase-graded positive-r panel edges, mirrored to r < 0;
  // local rate = T r^2 (cubic phase) + 2^{1/3}|a| (linear phase)
  const double beta = kCbrt2 * std::abs(a) + 1.0;
  std::vector<double> rr, wr;
  {
    quadrature::Rule half;
    double r = 0.0;
    while (r < R) {
      const double rate = T * r * r + beta;
      const double w = std::min({0.5, phase_per_panel / rate, R - r});
      half = quadrature::concat(std::move(half),
                                quadrature::gauss_legendre(12, r, r + w));
      r += w;
    }
    for (int k = half.size() - 1; k >= 0; --k) {
      rr.push_back(-half.nodes[k]);
      wr.push_back(half.weights[k]);
    }
    for (int k = 0; k < half.size(); ++k) {
      rr.push_back(half.nodes[k]);
      wr.push_back(half.weights[k]);
    }
  }
  const int n = static_cast<int>(rr.size());
  sys.neta = sys.nzeta = n;
  sys.eta.resize(n);
  sys.weta.resize(n);
  sys.zeta.resize(n);
  std::vector<cd> wzeta(n);
  for (int k = 0; k < n; ++k) {
    sys.eta[k] = cd(kC3 / 2.0, rr[k]);
    // every contour integral carries an implicit 1/(2 pi i), as in the Airy
    // representation Ai(r) = (1/2 pi i) int exp(-z^3/3 + r z) dz; with
    // d eta = i dr upward this leaves real weights dr / (2 pi)
    sys.weta[k] = cd(wr[k] / (2.0 * M_PI), 0.0);
    sys.zeta[k] = cd(-kC3 / 2.0, rr[k]);
    wzeta[k] = cd(wr[k] / (2.0 * M_PI), 0.0);
  }
  sys.S0.resize(static_cast<size_t>(n) * n);
  sys.C.resize(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const cd z = sys.zeta[k] - sys.eta[j];
      const cd expo = -(T / 3.0) * (sys.zeta[k] * sys.zeta[k] * sys.zeta[k] -
                                    sys.eta[j] * sys.eta[j] * sys.eta[j]) +
                      kCbrt2 * a * z;
      sys.S0[static_cast<size_t>(k) * n + j] =
          std::exp(expo) * M_PI * kCbrt2 / std::sin(M_PI * kCbrt2 * z);
    }
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      sys.C[static_cast<size_t>(i) * n + k] = wzeta[k] / (sys.zeta[k] - sys.eta[i]);
  return sys;
}

namespace {

// per-mu diagonal powers (-mu)^{-2^{1/3} zeta_k} and (-mu)^{+2^{1/3} eta_j}
void mu_diagonals(const CosecantSystem& sys, cd mu, std::vector<cd>& dz,
                  std::vector<cd>& de) {
  const cd logm = std::log(-mu);  // principal; contour stays off the cut
  dz.resize(sys.nzeta);
  de.resize(sys.neta);
  for (int k = 0; k < sys.nzeta; ++k)
    dz[k] = std::exp(-kCbrt2 * sys.zeta[k] * logm);
  for (int j = 0; j < sys.neta; ++j)
    de[j] = std::exp(kCbrt2 * sys.eta[j] * logm);
}

} // namespace

cd cosecant_det(const CosecantSystem& sys, cd mu) {
  const int n = sys.neta;
  std::vector<cd> dz, de;
  mu_diagonals(sys, mu, dz, de);
  // Ssc_kj = dz_k S0_kj de_j stays bounded: the (-mu) growth in |r_k - r_j|
  // is dominated by the csc decay
  linalg::Matrix Ssc(n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      Ssc(k, j) = dz[k] * sys.S0[static_cast<size_t>(k) * n + j] * de[j];
  linalg::Matrix C(n);
  C.a = sys.C;
  const linalg::Matrix M = linalg::matmul(C, Ssc);  // kernel values K(eta_i, eta_j)
  linalg::Matrix F(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      F(i, j) = ((i == j) ? cd(1.0) : cd(0.0)) - M(i, j) * sys.weta[j];
  return linalg::lu_determinant(F);
}

cd cosecant_kernel_entry(const CosecantSystem& sys, cd mu, int i, int j) {
  const int n = sys.neta;
  std::vector<cd> dz, de;
  mu_diagonals(sys, mu, dz, de);
  cd sum(0.0);
  for (int k = 0; k < n; ++k)
    sum += sys.C[static_cast<size_t>(i) * n + k] * dz[k] *
           sys.S0[static_cast<size_t>(k) * n + j] * de[j];
  return sum;
}

cd cosecant_weight_closed(cd z, cd mu) {
  const cd s = kCbrt2 * z;
  return M_PI * kCbrt2 * std::exp(-s * std::log(-mu)) / std::sin(M_PI * s);
}

cd cosecant_weight_tintegral(cd z, cd mu) {
  // 2^{1/3} int_R mu e^{-2^{1/3} t z} / (e^t - mu) dt; integrand decays like
  // e^{-(1-c) t} at +inf and e^{c t} at -inf with c = Re(-2^{1/3} z) in (0,1)
  const quadrature::Rule g = quadrature::composite_gl(16, 60, -90.0, 90.0);
  cd sum(0.0);
  for (int k = 0; k < g.size(); ++k) {
    const double t = g.nodes[k];
    sum += g.weights[k] * mu * std::exp(-kCbrt2 * t * z) / (std::exp(t) - mu);
  }
  return kCbrt2 * sum;
}

} // namespace kpz::kernels
