#include "kpz/specfun.hpp"

#include <cmath>

namespace kpz::specfun {

namespace {

constexpr double kAiZero = 0.35502805388781723926;  // Ai(0) = 3^{-2/3}/Gamma(2/3)
constexpr double kAipZero = 0.25881940379280679841; // -Ai'(0) = 3^{-1/3}/Gamma(1/3)
constexpr double kSwitch = 6.8;
constexpr double kSqrtPi = 1.7724538509055160273;

// Maclaurin solutions f, g of y'' = x y with f(0)=1, f'(0)=0 and g(0)=0,
// g'(0)=1; Ai = Ai(0) f + Ai'(0) g.  Terms recur with ratio x^3 / O(k^2), so
// the series converge fast even at the 6.8 switch point (~35 terms).
struct SeriesFG {
  double f, g, fp, gp;
};

SeriesFG airy_series(double x) {
  const double x3 = x * x * x;
  double tf = 1.0, tg = x;        // current terms of f and g
  double f = tf, g = tg;
  double fp = 0.0, gp = 1.0;      // derivatives, summed from term structure
  for (int k = 0; k < 80; ++k) {
    const double dk = 3.0 * k;
    tf *= x3 / ((dk + 2.0) * (dk + 3.0));
    tg *= x3 / ((dk + 3.0) * (dk + 4.0));
    f += tf;
    g += tg;
    // d/dx of x^{3k+3}-term = (3k+3)/x * term; safe since tf carries x^3.
    fp += tf * (dk + 3.0) / x;
    gp += tg * (dk + 4.0) / x;
    if (std::abs(tf) + std::abs(tg) < 1e-18 * (std::abs(f) + std::abs(g)))
      break;
  }
  if (x == 0.0) { fp = 0.0; gp = 1.0; }
  return {f, g, fp, gp};
}

// Optimally truncated asymptotic sums  sum (-1)^k u_k / zeta^k  (and v_k for
// the derivative).  u_{k+1}/u_k = (6k+1)(6k+3)(6k+5) / (216 (k+1)(2k+1)),
// v_k = (6k+1)/(1-6k) u_k.
struct AsymptoticSums {
  double su_even, su_odd;  // sums of u_{2k}/zeta^{2k} and u_{2k+1}/zeta^{2k+1}
  double sv_even, sv_odd;  // with alternating (-1)^k signs folded in
  double su_alt, sv_alt;   // fully alternating sums used on the positive axis
};

AsymptoticSums airy_asymptotic_sums(double zeta) {
  AsymptoticSums s{0, 0, 0, 0, 0, 0};
  double u = 1.0;
  double prev = 1e300;
  const double inv_zeta = 1.0 / zeta;
  double zk = 1.0;  // running 1 / zeta^k
  for (int k = 0; k < 60; ++k) {
    const double term = u * zk;
    if (std::abs(term) > prev) break;  // divergence onset: stop at min term
    prev = std::abs(term);
    const double v = (k == 0) ? 1.0 : (6.0 * k + 1.0) / (1.0 - 6.0 * k) * u;
    const double vterm = v * zk;
    const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
    s.su_alt += sign_k * term;
    s.sv_alt += sign_k * vterm;
    const int half = k / 2;
    const double sign_half = (half % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      s.su_even += sign_half * term;
      s.sv_even += sign_half * vterm;
    } else {
      s.su_odd += sign_half * term;
      s.sv_odd += sign_half * vterm;
    }
    u *= (6.0 * k + 1.0) * (6.0 * k + 3.0) * (6.0 * k + 5.0) /
         (216.0 * (k + 1.0) * (2.0 * k + 1.0));
    zk *= inv_zeta;
  }
  return s;
}

} // namespace

double airy_ai(double x) {
  if (std::abs(x) <= kSwitch) {
    const SeriesFG s = airy_series(x);
    return kAiZero * s.f - kAipZero * s.g;
  }
  if (x > 0) {
    const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    const AsymptoticSums s = airy_asymptotic_sums(zeta);
    return std::exp(-zeta) / (2.0 * kSqrtPi * std::pow(x, 0.25)) * s.su_alt;
  }
  const double z = -x;
  const double zeta = (2.0 / 3.0) * z * std::sqrt(z);
  const AsymptoticSums s = airy_asymptotic_sums(zeta);
  return (std::cos(zeta - 0.25 * M_PI) * s.su_even +
          std::sin(zeta - 0.25 * M_PI) * s.su_odd) /
         (kSqrtPi * std::pow(z, 0.25));
}

double airy_ai_prime(double x) {
  if (std::abs(x) <= kSwitch) {
    const SeriesFG s = airy_series(x);
    return kAiZero * s.fp - kAipZero * s.gp;
  }
  if (x > 0) {
    const double zeta = (2.0 / 3.0) * x * std::sqrt(x);
    const AsymptoticSums s = airy_asymptotic_sums(zeta);
    return -std::exp(-zeta) * std::pow(x, 0.25) / (2.0 * kSqrtPi) * s.sv_alt;
  }
  const double z = -x;
  const double zeta = (2.0 / 3.0) * z * std::sqrt(z);
  const AsymptoticSums s = airy_asymptotic_sums(zeta);
  return (std::sin(zeta - 0.25 * M_PI) * s.sv_even -
          std::cos(zeta - 0.25 * M_PI) * s.sv_odd) *
         std::pow(z, 0.25) / kSqrtPi;
}

double gaussian_cdf(double s) { return 0.5 * std::erfc(-s / std::sqrt(2.0)); }

double gumbel_weight(double r) {
  if (r < -7.0) return 0.0;          // exp(-e^7) underflows anyway; be explicit
  if (r > 40.0) return 1.0;
  return std::exp(-std::exp(-r));
}

} // namespace kpz::specfun
