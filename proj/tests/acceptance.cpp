// Acceptance gate: ten numbered criteria, each printing exactly one
// PASS/FAIL line with the measured quantity and its pinned tolerance.
// Usage: acceptance <N>   (N in 1..10); exit 0 iff the criterion passes.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kpz/crossover.hpp"
#include "kpz/painleve.hpp"
#include "kpz/specfun.hpp"
#include "kpz/wasep.hpp"

namespace kc = kpz::crossover;
namespace kp = kpz::painleve;
namespace kw = kpz::wasep;

namespace {

bool report(int n, const char* what, double measured, double tol) {
  const bool ok = measured <= tol;
  std::printf("CRITERION %d: %s (%s measured=%.3e, tol=%.1e)\n", n,
              ok ? "PASS" : "FAIL", what, measured, tol);
  return ok;
}

// piecewise-linear CDF through (s, F_T(s)) table
struct CdfTable {
  std::map<double, double> v;
  double operator()(double x) const {
    auto hi = v.lower_bound(x);
    if (hi == v.begin()) return 0.0;
    if (hi == v.end()) return 1.0;
    auto lo = std::prev(hi);
    const double w = (x - lo->first) / (hi->first - lo->first);
    return (1.0 - w) * lo->second + w * hi->second;
  }
};

CdfTable f_t_table(double T, double s_lo, double s_hi, double step) {
  CdfTable t;
  for (double s = s_lo; s <= s_hi + 1e-9; s += step)
    t.v[s] = kc::f_t_airy(T, s).value;
  return t;
}

// --- criteria -------------------------------------------------------------

bool criterion1() {
  // Tracy-Widom determinant: node convergence and the integro-differential
  // oracle value at the origin
  double conv = 0.0;
  for (double s : {-2.0, 0.0, 2.0})
    conv = std::max(conv, std::abs(kc::f_gue(s, 60) - kc::f_gue(s, 100)));
  const bool ok1 = report(1, "node convergence", conv, 1e-8);
  const kp::QField fld = kp::solve_q_step();
  const double oracle = kp::det_from_q(fld, 0.0);
  const double diff = std::abs(kc::f_gue(0.0) - oracle);
  const bool ok2 = diff <= 5e-4;
  std::printf("CRITERION 1: %s (origin vs oracle measured=%.3e, tol=5.0e-04)\n",
              ok2 ? "PASS" : "FAIL", diff);
  return ok1 && ok2;
}

bool criterion2() {
  double worst_csc = 0.0, worst_gum = 0.0;
  for (double T : {0.25, 1.0, 10.0})
    for (double s : {-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0}) {
      const double va = kc::f_t_airy(T, s).value;
      worst_csc = std::max(worst_csc, std::abs(va - kc::f_t_csc(T, s).value));
      worst_gum = std::max(worst_gum, std::abs(va - kc::f_t_gumbel(T, s).value));
    }
  const bool a = report(2, "airy vs cosecant", worst_csc, 1e-3);
  const bool b = worst_gum <= 5e-3;
  std::printf("CRITERION 2: %s (airy vs gumbel measured=%.3e, tol=5.0e-03)\n",
              b ? "PASS" : "FAIL", worst_gum);
  return a && b;
}

bool criterion3() {
  double worst = 0.0;
  for (double s : {1.0, 0.0, -1.0})
    worst = std::max(worst, std::abs(kc::f_t_airy(1.0, s).value -
                                     kc::f_t_airy_sym(1.0, s).value));
  return report(3, "half-line vs full-line", worst, 1e-5);
}

double tw_sup(double T) {
  double sup = 0.0;
  for (const auto& r : kc::tw_limit_scan(T, -3.0, 1.0, 0.25))
    sup = std::max(sup, std::abs(r.deviation));
  return sup;
}

double tw_sup_centered(double T) {
  // same comparison with the log sqrt(2 pi T) centering term removed; the
  // uncentered deviation decays only logarithmically in T, this one as T^{-1/3}
  const double shift = 0.5 * std::log(2.0 * M_PI * T);
  const double c = std::cbrt(T);
  double sup = 0.0;
  for (double s = -3.0; s <= 1.0 + 1e-12; s += 0.25) {
    const double ft = kc::f_t_airy(T, c * s + shift).value;
    const double tw = kc::f_gue(std::cbrt(2.0) * s);
    sup = std::max(sup, std::abs(ft - tw));
  }
  return sup;
}

bool criterion4() {
  const double s200 = tw_sup(200.0);
  const double s50 = tw_sup(50.0);
  const bool a = report(4, "TW deviation at T=200", s200, 0.02);
  const bool b = s200 < s50;
  std::printf("CRITERION 4: %s (monotone improvement: sup(T=200)=%.3e < sup(T=50)=%.3e)\n",
              b ? "PASS" : "FAIL", s200, s50);
  // informational: the deviation above is dominated by the slowly decaying
  // centering offset log sqrt(2 pi T) * T^{-1/3}; report the centered residue
  std::printf("CRITERION 4: info (centered deviation sup(T=200)=%.3e, sup(T=50)=%.3e)\n",
              tw_sup_centered(200.0), tw_sup_centered(50.0));
  return a && b;
}

kc::Config gauss_cfg() {
  kc::Config cfg;
  cfg.conjugate_symmetry = true;
  // at T = 1e-3 the sigma tail and x-domain cutoffs dominate the cost; e^{-16}
  // and e^{-14} truncations are orders of magnitude below the 0.02 tolerance
  // (the resolution check below confirms this against tighter cutoffs)
  cfg.sigma_decay_log = 16.0;
  cfg.domain_decay_log = 14.0;
  return cfg;
}

double gauss_sup(double T) {
  double sup = 0.0;
  for (const auto& r : kc::gaussian_limit_scan(T, -2.0, 2.0, 0.25, gauss_cfg()))
    sup = std::max(sup, std::abs(r.deviation));
  return sup;
}

bool criterion5() {
  {
    // truncation-resolution check at the costliest parameter point
    kc::Config tight = gauss_cfg();
    tight.sigma_decay_log = 24.0;
    tight.domain_decay_log = 20.0;
    const double v0 = kc::f_t_airy(1e-3, 0.0, gauss_cfg()).value;
    const double v1 = kc::f_t_airy(1e-3, 0.0, tight).value;
    std::printf("CRITERION 5: info (cutoff convergence at T=1e-3 measured=%.3e)\n",
                std::abs(v0 - v1));
  }
  const double s_small = gauss_sup(1e-3);
  const double s_big = gauss_sup(0.1);
  const bool a = report(5, "Gaussian deviation at T=1e-3", s_small, 0.02);
  const bool b = s_small < s_big;
  std::printf("CRITERION 5: %s (monotone improvement: sup(T=1e-3)=%.3e < sup(T=0.1)=%.3e)\n",
              b ? "PASS" : "FAIL", s_small, s_big);
  return a && b;
}

bool criterion6() {
  const double target = std::sqrt(M_PI) / 2.0;
  const double base = kc::variance_constant(1.0, 0.0);
  const bool a = report(6, "variance constant", std::abs(base - target), 1e-6);
  double drift = 0.0;
  for (auto [T, X] : {std::pair{4.0, 0.0}, {1.0, 1.5}, {0.5, -2.0}})
    drift = std::max(drift, std::abs(kc::variance_constant(T, X) - base));
  const bool b = drift <= 1e-6;
  std::printf("CRITERION 6: %s (shift invariance measured=%.3e, tol=1.0e-06)\n",
              b ? "PASS" : "FAIL", drift);
  return a && b;
}

bool criterion7() {
  double worst = 0.0;
  for (double T : {1.0, 10.0})
    for (double mu : {-0.5, -1.0, -2.0}) {
      const kp::QField fld = kp::solve_q(T, mu);
      for (double r : {-1.0, 0.0, 1.0})
        worst = std::max(worst, std::abs(kp::det_from_q(fld, r) -
                                         kc::half_line_det(T, r, mu)));
    }
  const bool a = report(7, "dual determinant routes", worst, 1e-3);
  // second-derivative identity, five-point finite differences at grid pitch
  const kp::QField fld = kp::solve_q(1.0, -1.0);
  const double h = 0.125;
  double worst_id = 0.0;
  for (double r : {-1.0, 0.0, 1.0}) {
    double l[5];
    for (int k = -2; k <= 2; ++k)
      l[k + 2] = std::log(kp::det_from_q(fld, r + k * h));
    const double fd = (-l[0] + 16.0 * l[1] - 30.0 * l[2] + 16.0 * l[3] - l[4]) /
                      (12.0 * h * h);
    worst_id = std::max(worst_id,
                        std::abs(fd - kp::log_det_second_derivative(fld, r)));
  }
  const bool b = worst_id <= 1e-4;
  std::printf("CRITERION 7: %s (curvature identity measured=%.3e, tol=1.0e-04)\n",
              b ? "PASS" : "FAIL", worst_id);
  return a && b;
}

bool criterion8() {
  double worst = 0.0;
  for (double x : {-0.5, 0.5, 1.5})
    for (double y : {-0.5, 0.5, 1.5})
      worst = std::max(worst,
                       std::abs(kpz::kernels::gumbel_kernel_pv(x, y, 1.0) -
                                kpz::kernels::gumbel_kernel_split(x, y, 1.0)));
  return report(8, "regularized-kernel dual routes", worst, 1e-4);
}

bool criterion9() {
  const double T = 0.5;
  const CdfTable ref = f_t_table(T, -6.0, 4.0, 0.25);
  kw::SimParams p;
  p.T = T;
  p.X = 0.0;
  const uint64_t seed = 20260826;

  p.eps = 0.1;
  const auto main_cdf = kw::sample_cdf(p, 20000, seed);
  const double ks_main = kw::ks_distance(main_cdf, std::cref(ref));
  const bool a = report(9, "KS at eps=0.1", ks_main, 0.08);

  p.eps = 0.2;
  const double ks_coarse =
      kw::ks_distance(kw::sample_cdf(p, 20000, seed + 1), std::cref(ref));
  p.eps = 0.05;
  const double ks_fine =
      kw::ks_distance(kw::sample_cdf(p, 20000, seed + 2), std::cref(ref));
  const bool b = ks_coarse > ks_main && ks_main > ks_fine;
  std::printf("CRITERION 9: %s (KS sequence eps {0.2,0.1,0.05} = {%.4f, %.4f, %.4f} decreasing)\n",
              b ? "PASS" : "FAIL", ks_coarse, ks_main, ks_fine);

  p.eps = 0.1;
  p.X = 0.5;
  const auto shifted = kw::sample_cdf(p, 20000, seed + 3);
  const double ks2 = kw::ks_distance_two_sample(main_cdf, shifted);
  const bool c = ks2 <= 0.03;
  std::printf("CRITERION 9: %s (stationarity two-sample KS measured=%.3e, tol=3.0e-02)\n",
              c ? "PASS" : "FAIL", ks2);
  return a && b && c;
}

bool criterion10() {
  double out_of_range = 0.0, imag_res = 0.0, decrease = 0.0;
  double prev = -1.0;
  for (double s = -5.0; s <= 3.01; s += 0.5) {
    const auto r = kc::f_t_airy(1.0, s);
    out_of_range = std::max({out_of_range, -r.value, r.value - 1.0});
    imag_res = std::max(imag_res, r.imag_residual);
    if (prev >= 0.0) decrease = std::max(decrease, prev - r.value);
    prev = r.value;
  }
  const bool a = report(10, "range excess", std::max(out_of_range, 0.0), 1e-4);
  const bool b = imag_res <= 1e-6;
  std::printf("CRITERION 10: %s (imaginary residual measured=%.3e, tol=1.0e-06)\n",
              b ? "PASS" : "FAIL", imag_res);
  const bool c = decrease <= 0.0;
  std::printf("CRITERION 10: %s (monotone nondecreasing, max decrease=%.3e)\n",
              c ? "PASS" : "FAIL", decrease);
  return a && b && c;
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..10>\n");
    return 2;
  }
  const int n = std::atoi(argv[1]);
  bool ok = false;
  try {
    switch (n) {
      case 1: ok = criterion1(); break;
      case 2: ok = criterion2(); break;
      case 3: ok = criterion3(); break;
      case 4: ok = criterion4(); break;
      case 5: ok = criterion5(); break;
      case 6: ok = criterion6(); break;
      case 7: ok = criterion7(); break;
      case 8: ok = criterion8(); break;
      case 9: ok = criterion9(); break;
      case 10: ok = criterion10(); break;
      default:
        std::fprintf(stderr, "usage: acceptance <criterion 1..10>\n");
        return 2;
    }
  } catch (const std::exception& e) {
    std::printf("CRITERION %d: FAIL (exception: %s)\n", n, e.what());
    return 1;
  }
  return ok ? 0 : 1;
}
