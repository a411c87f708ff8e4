#include "kpz/wasep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace kpz::wasep {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

double SimParams::gamma() const { return std::sqrt(eps); }
double SimParams::p() const { return 0.5 - 0.5 * std::sqrt(eps); }
double SimParams::q() const { return 0.5 + 0.5 * std::sqrt(eps); }
double SimParams::nu() const { return 1.0 - 2.0 * std::sqrt(q() * p()); }
double SimParams::lambda() const { return 0.5 * std::log(q() / p()); }
double SimParams::t_scaling() const { return std::pow(eps, -1.5) * T; }
double SimParams::t_process() const { return T / (eps * eps); }
int SimParams::site() const { return static_cast<int>(std::lround(X / eps)); }

int SimParams::window() const {
  // ballistic spread of the step-profile front plus a generous diffusive
  // margin; the simulator hard-errors if this is ever insufficient
  const double drift = t_scaling();
  const double diffusive = 10.0 * std::sqrt(t_process());
  return std::abs(site()) + static_cast<int>(std::ceil(drift)) +
         static_cast<int>(std::ceil(diffusive)) + 2;
}

void SimParams::validate() const {
  if (!(eps > 0.0 && eps <= 0.25))
    throw std::invalid_argument("wasep: eps must lie in (0, 1/4]");
  if (!(T > 0.0)) throw std::invalid_argument("wasep: T must be positive");
}

Replica simulate(const SimParams& params, uint64_t seed, bool track_positions) {
  params.validate();
  const int W = params.window();
  const double t_end = params.t_process();
  const double q_prob = params.q();

  // occupancy over sites [-W, W]; index = site + W
  std::vector<uint8_t> occ(2 * W + 1, 0);
  // particle list: current site of each simulated particle (initially 1..W);
  // sites > W form a packed reservoir
  std::vector<int32_t> pos(W);
  for (int m = 1; m <= W; ++m) {
    pos[m - 1] = m;
    occ[m + W] = 1;
  }
  std::vector<int32_t> at(2 * W + 1, -1);  // site index -> particle id
  for (int m = 1; m <= W; ++m) at[m + W] = m - 1;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);

  const int n_particles = W;
  int64_t crossings = 0;
  double time = 0.0;
  for (;;) {
    time += expo(rng) / n_particles;
    if (time > t_end) break;
    const int id = static_cast<int>(unif(rng) * n_particles);
    const int from = pos[id];
    const int dir = (unif(rng) < q_prob) ? -1 : +1;
    const int to = from + dir;
    if (to > W) continue;  // packed reservoir: jump suppressed
    if (occ[to + W]) continue;
    if (to <= -W) throw std::runtime_error("wasep: window too small (left edge)");
    if (from == W)
      throw std::runtime_error("wasep: window too small (right reservoir)");
    occ[from + W] = 0;
    occ[to + W] = 1;
    at[from + W] = -1;
    at[to + W] = id;
    pos[id] = to;
    if (from == 1 && to == 0) ++crossings;
    if (from == 0 && to == 1) --crossings;
  }

  Replica rep;
  rep.crossings = crossings;
  const int x = params.site();
  int64_t h = 2 * crossings;
  if (x > 0) {
    for (int y = 1; y <= x; ++y) h += occ[y + W] ? 1 : -1;
  } else if (x < 0) {
    for (int y = x + 1; y <= 0; ++y) h -= occ[y + W] ? 1 : -1;
  }
  rep.height = h;
  if (track_positions) rep.positions.assign(pos.begin(), pos.end());
  return rep;
}

double hopf_cole_value(const SimParams& params, int64_t height) {
  const double t = params.t_scaling();
  return std::log(0.5 / std::sqrt(params.eps)) -
         params.lambda() * static_cast<double>(height) +
         params.nu() * t / std::sqrt(params.eps) +
         params.X * params.X / (2.0 * params.T) +
         0.5 * std::log(2.0 * M_PI * params.T) + params.T / 24.0;
}

EmpiricalCdf sample_cdf(const SimParams& params, int n, uint64_t base_seed) {
  EmpiricalCdf cdf;
  cdf.base_seed = base_seed;
  cdf.values.reserve(n);
  cdf.records.reserve(n);
  for (int i = 0; i < n; ++i) {
    const uint64_t seed = splitmix64(base_seed ^ splitmix64(i));
    const Replica rep = simulate(params, seed);
    const double v = hopf_cole_value(params, rep.height);
    cdf.values.push_back(v);
    cdf.records.push_back({i, seed, rep.height, v});
  }
  std::sort(cdf.values.begin(), cdf.values.end());
  return cdf;
}

double ks_distance(const EmpiricalCdf& cdf,
                   const std::function<double(double)>& reference) {
  const size_t n = cdf.values.size();
  double d = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double F = reference(cdf.values[i]);
    d = std::max(d, std::abs(F - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
  }
  return d;
}

double ks_distance_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  const size_t na = a.values.size(), nb = b.values.size();
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < na || j < nb) {
    // step past every copy of the smallest unprocessed value on both sides
    // (heights are lattice-valued, so ties are the norm, and the gap must be
    // measured only between distinct values)
    double v;
    if (j >= nb) v = a.values[i];
    else if (i >= na) v = b.values[j];
    else v = std::min(a.values[i], b.values[j]);
    while (i < na && a.values[i] <= v) ++i;
    while (j < nb && b.values[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

void write_samples_csv(const std::string& path, const SimParams& params,
                       const EmpiricalCdf& cdf) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << "# eps=" << params.eps << " T=" << params.T << " X=" << params.X
      << " base_seed=" << cdf.base_seed << "\n";
  out << "replica_index,seed,height,value\n";
  for (const auto& r : cdf.records)
    out << r.index << ',' << r.seed << ',' << r.height << ',' << r.value << "\n";
}

} // namespace kpz::wasep
