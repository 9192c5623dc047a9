#include "fpl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "fpl/errors.hpp"
#include "fpl/numeric.hpp"
#include "fpl/parallel.hpp"

namespace fpl {

namespace {

void check_hypergeom_params(int N, int n, int i) {
  if (N < 0 || n < 0 || n > N || i < 0 || i > N) {
    throw std::domain_error("hypergeom_pmf: need 0 <= n <= N and 0 <= i <= N");
  }
}

// (1/n) sum c_j v_{j:n} for an unsorted value vector.
double lstat_of(std::vector<double> values, const WeightScheme& w) {
  std::sort(values.begin(), values.end());
  KahanSum s;
  const auto& c = w.c();
  for (std::size_t j = 0; j < values.size(); ++j) s.add(c[j] * values[j]);
  return s.value() / static_cast<double>(values.size());
}

void check_ascending_indices(const std::vector<int>& idx, int N, const char* who) {
  int prev = 0;
  for (int k : idx) {
    if (k <= prev || k > N) {
      throw std::domain_error(std::string(who) +
                              ": indices must be strictly increasing in 1..N");
    }
    prev = k;
  }
}

}  // namespace

double hypergeom_pmf(int N, int n, int i, int j) {
  check_hypergeom_params(N, n, i);
  if (choose_is_zero(i, j) || choose_is_zero(N - i, n - j)) return 0.0;
  long double lp = lchoose(i, j) + lchoose(N - i, n - j) - lchoose(N, n);
  double p = static_cast<double>(expl(lp));
  return std::min(1.0, std::max(0.0, p));
}

double expected_spacing_given(const Population& p, int n,
                              const std::vector<int>& fixed, int r) {
  const int N = p.size();
  const int m = static_cast<int>(fixed.size());
  if (!(0 <= m && m <= n && n < N)) {
    throw std::domain_error("expected_spacing_given: need 0 <= m <= n < N");
  }
  if (r < 0 || r > n) {
    throw std::domain_error("expected_spacing_given: rank r must lie in 0..n");
  }
  check_ascending_indices(fixed, N, "expected_spacing_given");

  std::vector<int> ks(static_cast<std::size_t>(m) + 2);
  ks[0] = 0;
  for (int s = 1; s <= m; ++s) ks[static_cast<std::size_t>(s)] = fixed[static_cast<std::size_t>(s - 1)];
  ks[static_cast<std::size_t>(m) + 1] = N + 1;

  const long double lden = lchoose(N - m, n - m);
  KahanSum acc;
  for (int s = 1; s <= m + 1; ++s) {
    // gaps d_0 and d_N vanish, so i can be clipped to 1..N-1
    int lo = std::max(ks[static_cast<std::size_t>(s - 1)], 1);
    int hi = std::min(ks[static_cast<std::size_t>(s)] - 1, N - 1);
    for (int i = lo; i <= hi; ++i) {
      if (choose_is_zero(i - s + 1, r - s + 1) ||
          choose_is_zero(N - i - m + s - 1, n - r - m + s - 1)) {
        continue;
      }
      double d = p.spacing(i);
      if (d == 0.0) continue;
      long double lw = lchoose(i - s + 1, r - s + 1) +
                       lchoose(N - i - m + s - 1, n - r - m + s - 1) - lden;
      acc.add(static_cast<double>(expl(lw)) * d);
    }
  }
  return acc.value();
}

bool KernelSet::g2_defined(int N, int n) { return N >= 4 && 2 <= n && n <= N - 2; }
bool KernelSet::g3_defined(int N, int n) { return N >= 6 && 3 <= n && n <= N - 3; }

KernelSet::KernelSet(Population p, WeightScheme w)
    : pop_(std::move(p)), w_(std::move(w)) {
  const int N = pop_.size();
  const int n = w_.n();
  if (n < 1 || n > N - 1) {
    throw std::domain_error("kernel undefined at this (N, n): need 1 <= n <= N-1");
  }

  const auto& c = w_.c();
  tg1_.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int i = 1; i <= N - 1; ++i) {
    double d = pop_.spacing(i);
    if (d == 0.0) continue;
    // support of j-1 under hyp(N-2, n-1, i-1)
    int jlo = std::max(1, n - N + i + 1);
    int jhi = std::min(n, i);
    KahanSum t;
    for (int j = jlo; j <= jhi; ++j) {
      t.add(c[static_cast<std::size_t>(j - 1)] * hypergeom_pmf(N - 2, n - 1, i - 1, j - 1));
    }
    tg1_[static_cast<std::size_t>(i)] = t.value() * d;
  }

  if (g2_defined(N, n)) {
    std::vector<double> d1 = w_.difference(1);  // D^1(c_j), j = 2..n
    sg2_.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int i = 2; i <= N - 2; ++i) {
      double d = pop_.spacing(i);
      if (d == 0.0) continue;
      int jlo = std::max(2, n - N + i + 2);
      int jhi = std::min(n, i);
      KahanSum t;
      for (int j = jlo; j <= jhi; ++j) {
        t.add(d1[static_cast<std::size_t>(j - 2)] * hypergeom_pmf(N - 4, n - 2, i - 2, j - 2));
      }
      sg2_[static_cast<std::size_t>(i)] = t.value() * d;
    }
  }

  if (g3_defined(N, n)) {
    std::vector<double> d2 = w_.difference(2);  // D^2(c_j), j = 3..n
    ug3_.assign(static_cast<std::size_t>(N) + 1, 0.0);
    for (int i = 3; i <= N - 3; ++i) {
      double d = pop_.spacing(i);
      if (d == 0.0) continue;
      int jlo = std::max(3, n - N + i + 3);
      int jhi = std::min(n, i);
      KahanSum t;
      for (int j = jlo; j <= jhi; ++j) {
        t.add(d2[static_cast<std::size_t>(j - 3)] * hypergeom_pmf(N - 6, n - 3, i - 3, j - 3));
      }
      ug3_[static_cast<std::size_t>(i)] = t.value() * d;
    }
  }
}

double KernelSet::g1_at(int k) const {
  const int N = pop_.size();
  if (k < 1 || k > N) throw std::domain_error("g1_at: index out of range");
  const double invN = 1.0 / static_cast<double>(N);
  KahanSum acc;
  for (int i = 1; i <= N - 1; ++i) {
    double coef = (i < k) ? -(i * invN) : (1.0 - i * invN);
    acc.add(coef * tg1_[static_cast<std::size_t>(i)]);
  }
  return -acc.value() / static_cast<double>(w_.n());
}

double g2_coefficient(int N, int k, int l, int i) {
  const double den = static_cast<double>(N - 1) * static_cast<double>(N - 2);
  if (i < k) return static_cast<double>(i) * (i - 1) / den;
  if (i < l) return -static_cast<double>(i - 1) * (N - i - 1) / den;
  return static_cast<double>(N - i - 1) * (N - i) / den;
}

double g3_coefficient(int N, int k, int l, int m, int i) {
  const double den = static_cast<double>(N - 2) * static_cast<double>(N - 3) *
                     static_cast<double>(N - 4);
  if (i < k) return -static_cast<double>(i) * (i - 1) * (i - 2) / den;
  if (i < l) return static_cast<double>(i - 1) * (i - 2) * (N - i - 2) / den;
  if (i < m) return -static_cast<double>(i - 2) * (N - i - 2) * (N - i - 1) / den;
  return static_cast<double>(N - i - 2) * (N - i - 1) * (N - i) / den;
}

double KernelSet::g2_at(int k, int l) const {
  const int N = pop_.size();
  const int n = w_.n();
  if (!g2_defined(N, n)) {
    throw std::domain_error("kernel undefined at this (N, n): g2 needs N >= 4 and 2 <= n <= N-2");
  }
  if (!(1 <= k && k < l && l <= N)) {
    throw std::domain_error("g2_at: need 1 <= k < l <= N");
  }
  KahanSum acc;
  for (int i = 1; i <= N - 1; ++i) {
    double v = sg2_[static_cast<std::size_t>(i)];
    if (v == 0.0) continue;
    acc.add(g2_coefficient(N, k, l, i) * v);
  }
  return -acc.value() / static_cast<double>(n);
}

double KernelSet::g3_at(int k, int l, int m) const {
  const int N = pop_.size();
  const int n = w_.n();
  if (!g3_defined(N, n)) {
    throw std::domain_error("kernel undefined at this (N, n): g3 needs N >= 6 and 3 <= n <= N-3");
  }
  if (!(1 <= k && k < l && l < m && m <= N)) {
    throw std::domain_error("g3_at: need 1 <= k < l < m <= N");
  }
  KahanSum acc;
  for (int i = 1; i <= N - 1; ++i) {
    double v = ug3_[static_cast<std::size_t>(i)];
    if (v == 0.0) continue;
    acc.add(g3_coefficient(N, k, l, m, i) * v);
  }
  return -acc.value() / static_cast<double>(n);
}

std::vector<double> KernelSet::g1_table(int workers) const {
  const int N = pop_.size();
  std::vector<double> out(static_cast<std::size_t>(N));
  run_partitioned(N, workers, [this, &out](long long lo, long long hi) {
    for (long long k = lo; k < hi; ++k) {
      out[static_cast<std::size_t>(k)] = g1_at(static_cast<int>(k) + 1);
    }
  });
  return out;
}

std::size_t KernelSet::pair_index(int k, int l) const {
  const std::size_t N = static_cast<std::size_t>(pop_.size());
  std::size_t kk = static_cast<std::size_t>(k);
  return (kk - 1) * N - kk * (kk - 1) / 2 + static_cast<std::size_t>(l - k - 1);
}

std::vector<double> KernelSet::g2_table(int workers) const {
  const int N = pop_.size();
  const int n = w_.n();
  if (!g2_defined(N, n)) {
    throw std::domain_error("kernel undefined at this (N, n): g2 needs N >= 4 and 2 <= n <= N-2");
  }
  std::vector<double> out(static_cast<std::size_t>(N) * (N - 1) / 2);
  run_partitioned(N - 1, workers, [this, N, &out](long long lo, long long hi) {
    for (int k = static_cast<int>(lo) + 1; k <= static_cast<int>(hi); ++k) {
      for (int l = k + 1; l <= N; ++l) out[pair_index(k, l)] = g2_at(k, l);
    }
  });
  return out;
}

std::vector<double> g1_table(const Population& p, const WeightScheme& w, int workers) {
  return KernelSet(p, w).g1_table(workers);
}

double g2_at(const Population& p, const WeightScheme& w, int k, int l) {
  return KernelSet(p, w).g2_at(k, l);
}

double g3_at(const Population& p, const WeightScheme& w, int k, int l, int m) {
  return KernelSet(p, w).g3_at(k, l, m);
}

namespace enumeration {

double subset_count(int N, int n) { return choose(N, n); }

void for_each_sample(int N, int n,
                     const std::function<void(const std::vector<int>&)>& visit) {
  if (n < 1 || n > N) throw std::domain_error("for_each_sample: need 1 <= n <= N");
  std::vector<int> comb(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) comb[static_cast<std::size_t>(t)] = t + 1;
  while (true) {
    visit(comb);
    int pos = n - 1;
    while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == N - (n - 1 - pos)) --pos;
    if (pos < 0) break;
    ++comb[static_cast<std::size_t>(pos)];
    for (int t = pos + 1; t < n; ++t) {
      comb[static_cast<std::size_t>(t)] = comb[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
}

double expected_l_enumerated(const Population& p, const WeightScheme& w) {
  const int N = p.size();
  const int n = w.n();
  double count = subset_count(N, n);
  if (count > kCapacity) {
    throw CapacityError("expected_l_enumerated: C(N, n) exceeds enumeration capacity");
  }
  KahanSum acc;
  std::vector<double> values(static_cast<std::size_t>(n));
  for_each_sample(N, n, [&](const std::vector<int>& comb) {
    for (int t = 0; t < n; ++t) {
      values[static_cast<std::size_t>(t)] = p.value(comb[static_cast<std::size_t>(t)]);
    }
    acc.add(lstat_of(values, w));
  });
  return acc.value() / count;
}

}  // namespace enumeration

double h_oracle(const Population& p, const WeightScheme& w,
                const std::vector<int>& fixed) {
  const int N = p.size();
  const int n = w.n();
  const int j = static_cast<int>(fixed.size());
  if (j < 1 || j > 3 || j > n) {
    throw std::domain_error("h_oracle: arity must satisfy 1 <= j <= min(3, n)");
  }
  if (n >= N) throw std::domain_error("h_oracle: need n < N");
  check_ascending_indices(fixed, N, "h_oracle");
  if (enumeration::subset_count(N - j, n - j) > enumeration::kCapacity) {
    throw CapacityError("h_oracle: completion count exceeds enumeration capacity");
  }

  const double mean_l = enumeration::expected_l_enumerated(p, w);

  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(N - j));
  for (int k = 1; k <= N; ++k) {
    if (!std::binary_search(fixed.begin(), fixed.end(), k)) rest.push_back(k);
  }
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int t = 0; t < j; ++t) {
    values[static_cast<std::size_t>(t)] = p.value(fixed[static_cast<std::size_t>(t)]);
  }

  KahanSum acc;
  long long count = 0;
  if (j == n) {
    acc.add(lstat_of(values, w));
    count = 1;
  } else {
    enumeration::for_each_sample(N - j, n - j, [&](const std::vector<int>& comb) {
      for (int t = 0; t < n - j; ++t) {
        values[static_cast<std::size_t>(j + t)] =
            p.value(rest[static_cast<std::size_t>(comb[static_cast<std::size_t>(t)] - 1)]);
      }
      acc.add(lstat_of(values, w));
      ++count;
    });
  }
  return acc.value() / static_cast<double>(count) - mean_l;
}

double kernels_from_h(const Population& p, const WeightScheme& w,
                      const std::vector<int>& indices) {
  const int N = p.size();
  const int n = w.n();
  const int arity = static_cast<int>(indices.size());
  check_ascending_indices(indices, N, "kernels_from_h");

  auto h1 = [&](int k) { return h_oracle(p, w, {k}); };
  auto h2 = [&](int k, int l) { return h_oracle(p, w, {k, l}); };

  switch (arity) {
    case 1: {
      if (n > N - 1) throw std::domain_error("kernels_from_h: arity 1 needs n <= N-1");
      return static_cast<double>(N - 1) / (N - n) * h1(indices[0]);
    }
    case 2: {
      if (n > N - 2) throw std::domain_error("kernels_from_h: arity 2 needs n <= N-2");
      int k = indices[0], l = indices[1];
      double coef = static_cast<double>(N - 2) / (N - n) *
                    static_cast<double>(N - 3) / (N - n - 1);
      return coef * (h2(k, l) -
                     static_cast<double>(N - 1) / (N - 2) * (h1(k) + h1(l)));
    }
    case 3: {
      if (n > N - 3) throw std::domain_error("kernels_from_h: arity 3 needs n <= N-3");
      int k = indices[0], l = indices[1], m = indices[2];
      double coef = static_cast<double>(N - 3) / (N - n) *
                    static_cast<double>(N - 4) / (N - n - 1) *
                    static_cast<double>(N - 5) / (N - n - 2);
      double h3 = h_oracle(p, w, {k, l, m});
      double pair_part = static_cast<double>(N - 2) / (N - 4) *
                         (h2(k, l) + h2(k, m) + h2(l, m));
      double lin_part = static_cast<double>(N - 1) / (N - 3) *
                        static_cast<double>(N - 2) / (N - 4) *
                        (h1(k) + h1(l) + h1(m));
      return coef * (h3 - pair_part + lin_part);
    }
    default:
      throw std::domain_error("kernels_from_h: arity must be 1, 2 or 3");
  }
}

}  // namespace fpl
