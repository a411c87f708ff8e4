#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "kpz/wasep.hpp"

namespace kw = kpz::wasep;

TEST_CASE("Derived parameters at eps = 0.01") {
  kw::SimParams p;
  p.eps = 0.01;
  CHECK(p.p() == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(p.q() == doctest::Approx(0.55).epsilon(1e-14));
  CHECK(std::abs(p.nu() - 0.0050125628) < 1e-7);
  CHECK(std::abs(p.lambda() - 0.1003353477) < 1e-7);
  CHECK(p.gamma() == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("Parameter validation") {
  kw::SimParams bad;
  bad.eps = 0.3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.eps = 0.1;
  bad.T = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.T = 0.5;
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("Simulation is deterministic in the seed") {
  kw::SimParams p;
  p.eps = 0.2;
  p.T = 0.2;
  const auto a = kw::simulate(p, 777);
  const auto b = kw::simulate(p, 777);
  const auto c = kw::simulate(p, 778);
  CHECK(a.height == b.height);
  CHECK(a.crossings == b.crossings);
  CHECK((a.height != c.height || a.crossings != c.crossings));
}

TEST_CASE("Height at the origin equals twice the bond current") {
  kw::SimParams p;
  p.eps = 0.2;
  p.T = 0.2;
  p.X = 0.0;
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto r = kw::simulate(p, seed);
    CHECK(r.height == 2 * r.crossings);
  }
}

TEST_CASE("Tagged particle / current / height equivalence") {
  // {h(t, x) >= 2m - x} = {particle starting at m has moved to a position
  // <= x}; check on several replicas at a displaced site
  kw::SimParams p;
  p.eps = 0.2;
  p.T = 0.15;
  p.X = 0.4;
  const int x = p.site();
  REQUIRE(x > 0);
  for (uint64_t seed : {11u, 12u, 13u, 14u}) {
    const auto r = kw::simulate(p, seed, true);
    const int m_max = std::min<int>(40, static_cast<int>(r.positions.size()));
    REQUIRE(m_max >= 10);
    for (int m = 1; m <= m_max; ++m) {
      const bool height_event = r.height >= 2 * m - x;
      const bool tagged_event = r.positions[m - 1] <= x;
      CAPTURE(seed); CAPTURE(m);
      CHECK(height_event == tagged_event);
    }
  }
}

TEST_CASE("Mean drift direction is leftward") {
  // q > p: particles drift left, so the bond current is positive on average
  kw::SimParams p;
  p.eps = 0.25;
  p.T = 0.3;
  double mean = 0.0;
  const int n = 40;
  for (int i = 0; i < n; ++i) mean += kw::simulate(p, 1000 + i).crossings;
  mean /= n;
  CHECK(mean > 0.0);
}

TEST_CASE("Empirical CDF is sorted and reproducible") {
  kw::SimParams p;
  p.eps = 0.2;
  p.T = 0.2;
  const auto cdf = kw::sample_cdf(p, 50, 42);
  for (size_t i = 1; i < cdf.values.size(); ++i)
    CHECK(cdf.values[i] >= cdf.values[i - 1]);
  const auto cdf2 = kw::sample_cdf(p, 50, 42);
  CHECK(cdf.values == cdf2.values);
  CHECK(cdf.records.size() == 50);
}

TEST_CASE("KS distance against the exact CDF of the sample itself") {
  kw::SimParams p;
  p.eps = 0.2;
  p.T = 0.2;
  const auto cdf = kw::sample_cdf(p, 200, 7);
  // degenerate reference: step function through the sample quantiles gives
  // distance <= 1/n + atom sizes; a constant 0 reference gives distance 1
  const double d1 = kw::ks_distance(cdf, [](double) { return 0.0; });
  CHECK(d1 == doctest::Approx(1.0));
  const double d2 = kw::ks_distance(cdf, [](double) { return 0.5; });
  CHECK(d2 == doctest::Approx(0.5));
}

TEST_CASE("Two-sample KS of identical samples is small") {
  kw::SimParams p;
  p.eps = 0.2;
  p.T = 0.2;
  const auto a = kw::sample_cdf(p, 300, 1);
  const auto b = kw::sample_cdf(p, 300, 1);
  CHECK(kw::ks_distance_two_sample(a, b) == doctest::Approx(0.0));
  const auto c = kw::sample_cdf(p, 300, 2);
  CHECK(kw::ks_distance_two_sample(a, c) < 0.25);
}

TEST_CASE("Hopf-Cole observable is finite and seed-stable") {
  kw::SimParams p;
  p.eps = 0.1;
  p.T = 0.25;
  const auto r = kw::simulate(p, 99);
  const double v = kw::hopf_cole_value(p, r.height);
  CHECK(std::isfinite(v));
}
