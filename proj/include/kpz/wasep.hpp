#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

// Weakly asymmetric simple exclusion process with step initial data, exact
// continuous-time simulation, and the Hopf-Cole observable whose law
// approaches the crossover distribution F_T as epsilon -> 0.

namespace kpz::wasep {

struct SimParams {
  double eps = 0.1;  // asymmetry^2; p = (1 - sqrt(eps))/2, q = (1 + sqrt(eps))/2
  double T = 0.5;
  double X = 0.0;

  [[nodiscard]] double gamma() const;    // q - p = sqrt(eps)
  [[nodiscard]] double p() const;
  [[nodiscard]] double q() const;
  [[nodiscard]] double nu() const;       // p + q - 2 sqrt(pq)
  [[nodiscard]] double lambda() const;   // (1/2) log(q/p)
  [[nodiscard]] double t_scaling() const;  // eps^{-3/2} T
  [[nodiscard]] double t_process() const;  // eps^{-2} T (height evaluated here)
  [[nodiscard]] int site() const;          // x = round(eps^{-1} X)
  [[nodiscard]] int window() const;        // half-width of simulated lattice

  void validate() const;  // throws on eps outside (0, 1/4] or T <= 0
};

// Outcome of one replica: height at the observation site plus tagged-particle
// data for the current/position identities.
struct Replica {
  int64_t height = 0;      // h_gamma(t_process, site)
  int64_t crossings = 0;   // N(t): net particle flux across the bond (0,1)
  std::vector<int32_t> positions;  // final position of particle starting at m (1-based)
};

// One exact trajectory.  Sites beyond the right window edge are a packed
// reservoir; the run aborts with std::runtime_error("window too small") if
// either lattice edge is touched by the dynamics.
Replica simulate(const SimParams& params, uint64_t seed,
                 bool track_positions = false);

// Hopf-Cole observable F_eps(T, X) + T/4! for one replica height.
double hopf_cole_value(const SimParams& params, int64_t height);

struct EmpiricalCdf {
  std::vector<double> values;  // sorted
  uint64_t base_seed = 0;
  struct Record {
    int index = 0;
    uint64_t seed = 0;
    int64_t height = 0;
    double value = 0.0;
  };
  std::vector<Record> records;  // in replica order
};

// n replicas with per-replica seeds derived from base_seed (splitmix64 of the
// replica index), sorted observable values.
EmpiricalCdf sample_cdf(const SimParams& params, int n, uint64_t base_seed);

// sup_x |F_n(x) - F(x)| against a reference CDF.
double ks_distance(const EmpiricalCdf& cdf,
                   const std::function<double(double)>& reference);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b);

// CSV dump: header replica_index,seed,height,value then one row per replica.
void write_samples_csv(const std::string& path, const SimParams& params,
                       const EmpiricalCdf& cdf);

} // namespace kpz::wasep
