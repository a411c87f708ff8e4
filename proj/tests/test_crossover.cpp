#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kpz/crossover.hpp"

namespace kc = kpz::crossover;
using cd = std::complex<double>;

TEST_CASE("Contour quadrature reproduces the residue") {
  // (1/2 pi i) int_C e^{-mu} dmu / mu = e^0 = 1 for the counterclockwise
  // contour around the origin
  const auto c = kc::mu_contour(25.0);
  cd sum = 0.0;
  for (size_t m = 0; m < c.nodes.size(); ++m) sum += c.coeff[m];
  CHECK(sum.real() == doctest::Approx(1.0).epsilon(5e-10));
  CHECK(std::abs(sum.imag()) < 5e-10);
  // with g(mu) = mu the integral vanishes (no pole)
  cd sum1 = 0.0;
  for (size_t m = 0; m < c.nodes.size(); ++m) sum1 += c.coeff[m] * c.nodes[m];
  CHECK(std::abs(sum1) < 5e-10);
}

TEST_CASE("Half contour equals full contour for conjugate-symmetric data") {
  const auto full = kc::mu_contour(20.0);
  const auto half = kc::mu_contour(20.0, true);
  // g(mu) = exp(conj-symmetric rational) -> equal real parts
  auto g = [](cd mu) { return 1.0 / (2.0 - mu) + 0.3 * mu; };
  cd sf = 0.0;
  for (size_t m = 0; m < full.nodes.size(); ++m) sf += full.coeff[m] * g(full.nodes[m]);
  cd sh = 0.0;
  for (size_t m = 0; m < half.nodes.size(); ++m) sh += half.coeff[m] * g(half.nodes[m]);
  CHECK(sf.real() == doctest::Approx(2.0 * sh.real()).epsilon(1e-12));
}

TEST_CASE("Tracy-Widom GUE reference values") {
  // frozen: F_GUE(0) = 0.96937282835526, F_GUE(-2) = 0.41322414250511
  CHECK(kc::f_gue(0.0) == doctest::Approx(0.9693728283553).epsilon(1e-9));
  CHECK(kc::f_gue(-2.0) == doctest::Approx(0.4132241425051).epsilon(1e-8));
  CHECK(kc::f_gue(4.0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("F_T basic shape at T = 1") {
  const double f_m2 = kc::f_t_airy(1.0, -2.0).value;
  const double f_0 = kc::f_t_airy(1.0, 0.0).value;
  const double f_2 = kc::f_t_airy(1.0, 2.0).value;
  CHECK(f_m2 >= -1e-6);
  CHECK(f_2 <= 1.0 + 1e-6);
  CHECK(f_m2 < f_0);
  CHECK(f_0 < f_2);
  CHECK(kc::f_t_airy(1.0, 0.0).imag_residual < 1e-8);
}

TEST_CASE("Contour truncation is converged") {
  kc::Config wide;
  wide.mu_ray_xmax = 28.0;
  const double base = kc::f_t_airy(1.0, 0.0).value;
  const double widev = kc::f_t_airy(1.0, 0.0, wide).value;
  CHECK(std::abs(base - widev) < 1e-7);
}

TEST_CASE("Symmetrized full-line route agrees with half-line route") {
  for (double s : {-1.0, 0.0, 1.0}) {
    CAPTURE(s);
    const double hl = kc::f_t_airy(1.0, s).value;
    const double fl = kc::f_t_airy_sym(1.0, s).value;
    CHECK(std::abs(hl - fl) < 1e-5);
  }
}

TEST_CASE("Conjugate-symmetry evaluation matches full contour") {
  kc::Config half;
  half.conjugate_symmetry = true;
  const double full = kc::f_t_airy(0.5, 0.5).value;
  const double sym = kc::f_t_airy(0.5, 0.5, half).value;
  CHECK(std::abs(full - sym) < 1e-10);
}

TEST_CASE("Variance constant equals sqrt(pi)/2 and is (T, X) independent") {
  const double target = std::sqrt(M_PI) / 2.0;
  CHECK(kc::variance_constant(1.0, 0.0) == doctest::Approx(target).epsilon(1e-8));
  CHECK(kc::variance_constant(5.0, 2.0) == doctest::Approx(target).epsilon(1e-8));
  CHECK(kc::variance_constant(0.25, -1.0) == doctest::Approx(target).epsilon(1e-8));
}

TEST_CASE("Beta scaling map") {
  CHECK(kc::beta_mapped_time(2.0, 3.0) == doctest::Approx(48.0));
  CHECK(kc::beta_mapped_position(2.0, 3.0) == doctest::Approx(12.0));
}

TEST_CASE("Gumbel density factor is positive where it matters") {
  const double f0 = kc::gumbel_f(1.0, 0.0);
  CHECK(std::isfinite(f0));
  CHECK(f0 > 0.0);
}
