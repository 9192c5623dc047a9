#include "fpl/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "fpl/errors.hpp"
#include "fpl/numeric.hpp"
#include "fpl/parallel.hpp"

namespace fpl {

namespace {

// Reusable buffer for repeated partial Fisher-Yates draws: the n swaps are
// undone after each draw, so the permutation array is never re-initialized.
class ShuffleScratch {
 public:
  explicit ShuffleScratch(int N) : perm_(static_cast<std::size_t>(N)) {
    std::iota(perm_.begin(), perm_.end(), 0);
  }

  // Writes n distinct 0-based indices (draw order) into out.
  void draw(const CounterRng& rng, int n, int* out) {
    const int N = static_cast<int>(perm_.size());
    swaps_.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      int j = t + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(t),
                                               static_cast<std::uint64_t>(N - t)));
      swaps_[static_cast<std::size_t>(t)] = j;
      std::swap(perm_[static_cast<std::size_t>(t)], perm_[static_cast<std::size_t>(j)]);
      out[t] = perm_[static_cast<std::size_t>(t)];
    }
    for (int t = n - 1; t >= 0; --t) {
      std::swap(perm_[static_cast<std::size_t>(t)],
                perm_[static_cast<std::size_t>(swaps_[static_cast<std::size_t>(t)])]);
    }
  }

 private:
  std::vector<int> perm_;
  std::vector<int> swaps_;
};

}  // namespace

std::vector<int> draw_sample(const Population& p, int n, std::uint64_t replicate,
                             std::uint64_t seed) {
  const int N = p.size();
  if (n < 1 || n >= N) throw std::domain_error("draw_sample: need 1 <= n < N");
  ShuffleScratch scratch(N);
  std::vector<int> idx(static_cast<std::size_t>(n));
  scratch.draw(CounterRng(seed, replicate), n, idx.data());
  for (int& k : idx) ++k;  // 1-based
  std::sort(idx.begin(), idx.end());
  return idx;
}

double l_statistic(const std::vector<double>& sample, const WeightScheme& w) {
  if (static_cast<int>(sample.size()) != w.n()) {
    throw std::domain_error("l_statistic: sample length must equal n");
  }
  std::vector<double> sorted = sample;
  std::stable_sort(sorted.begin(), sorted.end());
  KahanSum acc;
  const auto& c = w.c();
  for (std::size_t j = 0; j < sorted.size(); ++j) acc.add(c[j] * sorted[j]);
  return acc.value() / static_cast<double>(sorted.size());
}

std::vector<double> simulate_l_values(const Population& p, const WeightScheme& w,
                                      long long replicates, std::uint64_t seed,
                                      int workers) {
  const int N = p.size();
  const int n = w.n();
  if (n < 1 || n >= N) throw std::domain_error("simulate_l_values: need 1 <= n < N");
  if (replicates < 1) throw std::domain_error("simulate_l_values: need at least 1 replicate");

  const auto& x = p.values();
  const auto& c = w.c();
  std::vector<double> out(static_cast<std::size_t>(replicates));
  run_partitioned(replicates, workers, [&](long long lo, long long hi) {
    ShuffleScratch scratch(N);
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::vector<double> vals(static_cast<std::size_t>(n));
    for (long long r = lo; r < hi; ++r) {
      scratch.draw(CounterRng(seed, static_cast<std::uint64_t>(r)), n, idx.data());
      for (int t = 0; t < n; ++t) {
        vals[static_cast<std::size_t>(t)] = x[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])];
      }
      std::sort(vals.begin(), vals.end());
      double dot = 0.0;
      for (int t = 0; t < n; ++t) dot += c[static_cast<std::size_t>(t)] * vals[static_cast<std::size_t>(t)];
      out[static_cast<std::size_t>(r)] = dot / static_cast<double>(n);
    }
  });
  return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> realizations)
    : values_(std::move(realizations)) {
  if (values_.empty()) throw std::domain_error("EmpiricalCdf: need at least one value");
  std::sort(values_.begin(), values_.end());
}

double EmpiricalCdf::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("quantile: q must lie in (0, 1)");
  const double R = static_cast<double>(values_.size());
  // ceil(qR)-th order statistic; nudge guards against qR landing a hair
  // above an integer in floating point.
  long long rank = static_cast<long long>(std::ceil(q * R - 1e-9));
  rank = std::max<long long>(1, std::min<long long>(rank, size()));
  return values_[static_cast<std::size_t>(rank - 1)];
}

double EmpiricalCdf::cdf(double x) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

EmpiricalCdf simulate_cdf(const Population& p, const SimulationPlan& plan) {
  if (plan.replicates < 1) throw std::domain_error("simulate_cdf: need R >= 1");
  if (!(plan.sigma_tilde > 0.0)) {
    throw DegenerateStatistic("simulate_cdf: sigma_tilde must be positive");
  }
  const int n = plan.weights.n();
  std::vector<double> vals =
      simulate_l_values(p, plan.weights, plan.replicates, plan.seed, plan.workers);
  const double scale = std::sqrt(static_cast<double>(n)) / plan.sigma_tilde;
  for (double& v : vals) v = (v - plan.mean_l) * scale;
  return EmpiricalCdf(std::move(vals));
}

void dump_realizations(const EmpiricalCdf& cdf, const std::string& bin_path,
                       const std::string& sidecar_path, std::uint64_t seed) {
  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open for writing: " + bin_path);
  for (double v : cdf.values()) {
    std::uint64_t u;
    std::memcpy(&u, &v, sizeof u);
    unsigned char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>((u >> (8 * b)) & 0xff);
    bin.write(reinterpret_cast<const char*>(bytes), 8);
  }
  bin.close();

  std::ofstream meta(sidecar_path);
  if (!meta) throw std::runtime_error("cannot open for writing: " + sidecar_path);
  meta << "format = float64-le\n"
       << "replicates = " << cdf.size() << "\n"
       << "seed = " << seed << "\n"
       << "generator = " << CounterRng::kVersion << "\n";
}

}  // namespace fpl
