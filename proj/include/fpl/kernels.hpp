#pragma once

#include <functional>
#include <vector>

#include "fpl/population.hpp"
#include "fpl/weights.hpp"

namespace fpl {

// P{hypergeometric(N, n, i) = j} = C(i,j) C(N-i, n-j) / C(N,n), evaluated in
// log-gamma space and clamped to [0,1]. Out-of-support j yields an exact 0;
// parameter-range violations (n or i outside 0..N) are domain errors.
double hypergeom_pmf(int N, int n, int i, int j);

// Conditional expected sample spacing E(D_{r:n} | X_1 = x_{k_1}, ...,
// X_m = x_{k_m}) for a simple random sample of size n drawn without
// replacement, with the conventions k_0 = 0, k_{m+1} = N+1 and out-of-range
// binomials equal to 0. `fixed` holds the 1-based indices k_1 < ... < k_m.
double expected_spacing_given(const Population& p, int n,
                              const std::vector<int>& fixed, int r);

// Closed-form Hoeffding-decomposition kernels g1, g2, g3 of the L-statistic
// (1/n) sum c_j X_{j:n} under sampling without replacement.
//
// Construction precomputes, for each population gap i, the weight/probability
// mixtures
//   t_i = sum_j D^0(c_j) P{hyp(N-2, n-1, i-1) = j-1}
//   s_i = sum_j D^1(c_j) P{hyp(N-4, n-2, i-2) = j-2}
//   u_i = sum_j D^2(c_j) P{hyp(N-6, n-3, i-3) = j-3}
// (cost O(N n) each); every kernel entry is then an O(N) compensated sum of
// coefficient * mixture * spacing. All indices are 1-based.
class KernelSet {
 public:
  KernelSet(Population p, WeightScheme w);

  // g2 needs N >= 4 and 2 <= n <= N-2; g3 needs N >= 6 and 3 <= n <= N-3.
  // Outside these windows the formulas' inner distributions are not defined
  // and the accessors fail loudly.
  static bool g2_defined(int N, int n);
  static bool g3_defined(int N, int n);

  int population_size() const { return pop_.size(); }
  int sample_size() const { return w_.n(); }
  const Population& population() const { return pop_; }
  const WeightScheme& weights() const { return w_; }

  double g1_at(int k) const;
  double g2_at(int k, int l) const;                 // requires k < l
  double g3_at(int k, int l, int m) const;          // requires k < l < m

  // Full g1 vector; entries are independent, so they may be partitioned
  // across workers. Summation order within an entry is fixed, making the
  // result identical for any worker count.
  std::vector<double> g1_table(int workers = 1) const;

  // Upper triangle of g2 as a flat row-major vector: pair (k, l), k < l,
  // lives at pair_index(k, l).
  std::vector<double> g2_table(int workers = 1) const;
  std::size_t pair_index(int k, int l) const;

 private:
  Population pop_;
  WeightScheme w_;
  std::vector<double> tg1_;  // t_i * d_i, i = 1..N-1
  std::vector<double> sg2_;  // s_i * d_i (empty when g2 undefined)
  std::vector<double> ug3_;  // u_i * d_i (empty when g3 undefined)
};

// Convenience wrappers.
std::vector<double> g1_table(const Population& p, const WeightScheme& w, int workers = 1);
double g2_at(const Population& p, const WeightScheme& w, int k, int l);
double g3_at(const Population& p, const WeightScheme& w, int k, int l, int m);

// Piecewise gap coefficients phi_{k,l}(i) and theta_{k,l,m}(i) of the pair
// and triple kernels (exposed for the coefficient-bound diagnostics).
double g2_coefficient(int N, int k, int l, int i);
double g3_coefficient(int N, int k, int l, int m, int i);

// Brute-force conditional expectation h_j(x_{k_1}, ..., x_{k_j}) =
// E(L_n - E L_n | X_1 = x_{k_1}, ..., X_j = x_{k_j}), j = |fixed| <= min(3, n),
// by enumerating every completion of the sample (independent of the
// closed-form path above). Guarded: C(N-j, n-j) and C(N, n) must not exceed
// the enumeration capacity.
double h_oracle(const Population& p, const WeightScheme& w,
                const std::vector<int>& fixed);

// Kernel of arity |indices| (1..3) assembled from the h_j conditionals.
// Serves as the independent cross-check of KernelSet.
double kernels_from_h(const Population& p, const WeightScheme& w,
                      const std::vector<int>& indices);

namespace enumeration {

inline constexpr double kCapacity = 1e7;

// C(N, n) as a double (for guard checks).
double subset_count(int N, int n);

// Visit every n-subset of {1, ..., N} in lexicographic order.
void for_each_sample(int N, int n,
                     const std::function<void(const std::vector<int>&)>& visit);

// E L_n by full enumeration (guarded by kCapacity).
double expected_l_enumerated(const Population& p, const WeightScheme& w);

}  // namespace enumeration

}  // namespace fpl
