#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fpl/kernels.hpp"
#include "fpl/population.hpp"
#include "fpl/weights.hpp"

namespace fpl {

enum class SigmaMode { kAuto, kExact, kMonteCarlo, kLinear };

struct SigmaSpec {
  SigmaMode mode = SigmaMode::kAuto;
  long long replicates = 1'000'000;  // monte carlo only
  std::uint64_t seed = 0;
  int workers = 1;
};

// One-term Edgeworth expansion of the normalized L-statistic
// S_n = sqrt(n) (L_n - E L_n):
//   G_n(x) = Phi(x) - e * (x^2 - 1) phi(x),  e = ((q-p) alpha + 3 kappa)/(6 tau)
// together with every ingredient that defines it.
struct EdgeworthModel {
  int population_size = 0;   // N
  int sample_size = 0;       // n
  double p = 0.0;            // n/N
  double q = 0.0;            // 1 - p
  double tau = 0.0;          // tau^2 = N p q
  int n_star = 0;            // min(n, N-n)
  double sigma1 = 0.0;       // sigma1^2 = E g1^2(X_1)
  double alpha = 0.0;        // sigma1^-3 E g1^3(X_1)
  double kappa = 0.0;        // sigma1^-3 tau^2 E g2(X_1,X_2) g1(X_1) g1(X_2)
  double sigma_tilde = 0.0;  // sqrt(Var S_n)
  double sigma_tilde_stderr = 0.0;  // 0 unless monte carlo
  double e_coeff = 0.0;
  double mean_l = 0.0;       // E L_n
  std::string sigma_mode;    // provenance: "exact" | "montecarlo(R=...)" | "linear"

  // G_n(x), unclipped: extreme tails may exit [0,1] slightly.
  double cdf(double x) const;
  double cdf_clipped(double x) const;

  // Root of G_n(x) = prob on [-10, 10] by bisection from the bracket around
  // the normal quantile; |G_n(x) - prob| <= 1e-12 at return.
  double quantile(double prob) const;

  // Flat key = value report (the serialized form emitted by the CLI).
  std::string report() const;
};

// E L_n, exact: order-statistic means assembled from unconditional expected
// sample spacings (no sampling involved).
double expected_L(const Population& p, const WeightScheme& w);

// sigma1 and alpha from a g1 table. Degenerate g1 (sigma1 = 0) is an error.
struct LinearMoments {
  double sigma1;
  double alpha;
};
LinearMoments linear_moments(const std::vector<double>& g1);

// kappa by the exact pair double-sum over the g2 kernel.
double kappa_moment(const KernelSet& kernels, const std::vector<double>& g1,
                    double tau, double sigma1);

// Var S_n = n Var L_n. Exact mode enumerates all C(N,n) samples (guarded);
// monte carlo mode reports a standard error through stderr_out; linear mode
// returns the first-projection approximation n^2 sigma1^2 (N-n)/(N-1).
double sigma_tilde(const Population& p, const WeightScheme& w,
                   const SigmaSpec& spec, double* stderr_out = nullptr);

// Assembles the full model (kernel tables, moments, sigma).
EdgeworthModel build_model(const Population& p, const WeightScheme& w,
                           const SigmaSpec& sigma = {}, int workers = 1);

// sup over the symmetric band lo < |t| < hi of |E exp(i t g1(X_1)/sigma1)|,
// by grid scan (step `grid_step`) plus one golden-section refinement around
// the grid argmax. Diagnostic for the nonlattice / Cramer-type conditions.
double charfn_sup(const std::vector<double>& g1, double sigma1, double lo,
                  double hi, double grid_step);

}  // namespace fpl
