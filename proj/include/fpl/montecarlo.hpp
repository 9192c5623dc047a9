#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpl/population.hpp"
#include "fpl/rng.hpp"
#include "fpl/weights.hpp"

namespace fpl {

// Seeded plan for simulating the normalized statistic
// S_n / sigma_tilde = sqrt(n) (L_n - mean_l) / sigma_tilde.
struct SimulationPlan {
  long long replicates = 0;
  std::uint64_t seed = 0;
  WeightScheme weights = WeightScheme::constant(1);
  double mean_l = 0.0;
  double sigma_tilde = 1.0;
  int workers = 1;
};

// Sorted realizations with lower-order-statistic quantiles:
// quantile(q) is the ceil(q R)-th smallest value (no interpolation).
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> realizations);

  long long size() const { return static_cast<long long>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double quantile(double q) const;
  double cdf(double x) const;

 private:
  std::vector<double> values_;  // ascending
};

// n distinct 1-based indices (sorted), each n-subset equally likely. A pure
// function of (seed, replicate): execution order and worker count are
// irrelevant. Implemented as a partial Fisher-Yates shuffle driven by the
// counter-based stream keyed on (seed, replicate).
std::vector<int> draw_sample(const Population& p, int n,
                             std::uint64_t replicate, std::uint64_t seed);

// (1/n) sum c_j X_{j:n}; sorts a copy of the sample, so the result is
// invariant under input permutation.
double l_statistic(const std::vector<double>& sample, const WeightScheme& w);

// R realizations of L_n under without-replacement sampling, replicate r
// keyed on (seed, r). Deterministic for any worker partition.
std::vector<double> simulate_l_values(const Population& p,
                                      const WeightScheme& w,
                                      long long replicates, std::uint64_t seed,
                                      int workers = 1);

// Empirical CDF of S_n / sigma_tilde per the plan.
EmpiricalCdf simulate_cdf(const Population& p, const SimulationPlan& plan);

// Raw realizations as little-endian float64 plus a text sidecar recording
// seed, replicate count and generator version.
void dump_realizations(const EmpiricalCdf& cdf, const std::string& bin_path,
                       const std::string& sidecar_path, std::uint64_t seed);

}  // namespace fpl
