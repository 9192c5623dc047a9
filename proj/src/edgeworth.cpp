#include "fpl/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fpl/errors.hpp"
#include "fpl/montecarlo.hpp"
#include "fpl/numeric.hpp"

namespace fpl {

namespace {

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double expected_L(const Population& p, const WeightScheme& w) {
  const int N = p.size();
  const int n = w.n();
  if (n < 1 || n >= N) throw std::domain_error("expected_L: need 1 <= n < N");
  // E X_{j:n} = x_0 + sum_{r<j} E D_{r:n}, then average against the weights.
  std::vector<double> ed(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    ed[static_cast<std::size_t>(r)] = expected_spacing_given(p, n, {}, r);
  }
  const auto& c = w.c();
  KahanSum acc;
  KahanSum prefix;
  prefix.add(p.value(1));  // x_0 = x_1
  for (int j = 1; j <= n; ++j) {
    prefix.add(ed[static_cast<std::size_t>(j - 1)]);
    acc.add(c[static_cast<std::size_t>(j - 1)] * prefix.value());
  }
  return acc.value() / static_cast<double>(n);
}

LinearMoments linear_moments(const std::vector<double>& g1) {
  if (g1.empty()) throw std::domain_error("linear_moments: empty g1 table");
  const double N = static_cast<double>(g1.size());
  KahanSum sq, cube;
  for (double v : g1) {
    sq.add(v * v);
    cube.add(v * v * v);
  }
  double sigma1 = std::sqrt(sq.value() / N);
  if (!(sigma1 > 0.0)) {
    throw DegenerateStatistic("linear part is degenerate (sigma1 = 0); expansion undefined");
  }
  double alpha = (cube.value() / N) / (sigma1 * sigma1 * sigma1);
  return {sigma1, alpha};
}

double kappa_moment(const KernelSet& kernels, const std::vector<double>& g1,
                    double tau, double sigma1) {
  if (!(sigma1 > 0.0)) {
    throw DegenerateStatistic("kappa: sigma1 must be positive");
  }
  const int N = kernels.population_size();
  KahanSum acc;
  for (int k = 1; k < N; ++k) {
    for (int l = k + 1; l <= N; ++l) {
      acc.add(kernels.g2_at(k, l) * g1[static_cast<std::size_t>(k - 1)] *
              g1[static_cast<std::size_t>(l - 1)]);
    }
  }
  double pair_mean = 2.0 * acc.value() /
                     (static_cast<double>(N) * static_cast<double>(N - 1));
  return tau * tau * pair_mean / (sigma1 * sigma1 * sigma1);
}

double sigma_tilde(const Population& p, const WeightScheme& w,
                   const SigmaSpec& spec, double* stderr_out) {
  const int N = p.size();
  const int n = w.n();
  if (n < 1 || n >= N) throw std::domain_error("sigma_tilde: need 1 <= n < N");
  if (stderr_out) *stderr_out = 0.0;

  SigmaMode mode = spec.mode;
  if (mode == SigmaMode::kAuto) {
    mode = enumeration::subset_count(N, n) <= 1e6 ? SigmaMode::kExact
                                                  : SigmaMode::kMonteCarlo;
  }

  switch (mode) {
    case SigmaMode::kExact: {
      double count = enumeration::subset_count(N, n);
      if (count > 1e6) {
        throw CapacityError("sigma_tilde: exact mode needs C(N, n) <= 1e6");
      }
      double mean = enumeration::expected_l_enumerated(p, w);
      KahanSum ss;
      std::vector<double> values(static_cast<std::size_t>(n));
      enumeration::for_each_sample(N, n, [&](const std::vector<int>& comb) {
        for (int t = 0; t < n; ++t) {
          values[static_cast<std::size_t>(t)] = p.value(comb[static_cast<std::size_t>(t)]);
        }
        double dev = l_statistic(values, w) - mean;
        ss.add(dev * dev);
      });
      return std::sqrt(static_cast<double>(n) * ss.value() / count);
    }
    case SigmaMode::kMonteCarlo: {
      if (spec.replicates < 10'000) {
        throw std::domain_error("sigma_tilde: monte carlo mode needs R >= 1e4");
      }
      std::vector<double> ls =
          simulate_l_values(p, w, spec.replicates, spec.seed, spec.workers);
      const double R = static_cast<double>(ls.size());
      KahanSum sum;
      for (double v : ls) sum.add(v);
      double mean = sum.value() / R;
      KahanSum m2s, m4s;
      for (double v : ls) {
        double d = v - mean;
        m2s.add(d * d);
        m4s.add(d * d * d * d);
      }
      double m2 = m2s.value() / R;
      double m4 = m4s.value() / R;
      double var_s = static_cast<double>(n) * m2 * R / (R - 1.0);
      double sigma = std::sqrt(var_s);
      if (stderr_out) {
        // se of the variance estimate, propagated to the standard deviation
        double se_var = static_cast<double>(n) * std::sqrt(std::max(0.0, m4 - m2 * m2) / R);
        *stderr_out = sigma > 0.0 ? se_var / (2.0 * sigma) : 0.0;
      }
      return sigma;
    }
    case SigmaMode::kLinear: {
      KernelSet kernels(p, w);
      std::vector<double> g1 = kernels.g1_table();
      LinearMoments lm = linear_moments(g1);
      double var = static_cast<double>(n) * n * lm.sigma1 * lm.sigma1 *
                   (static_cast<double>(N - n) / (N - 1));
      return std::sqrt(var);
    }
    case SigmaMode::kAuto:
      break;
  }
  throw std::logic_error("sigma_tilde: unreachable mode");
}

EdgeworthModel build_model(const Population& p, const WeightScheme& w,
                           const SigmaSpec& sigma, int workers) {
  const int N = p.size();
  const int n = w.n();
  if (!KernelSet::g2_defined(N, n)) {
    throw std::domain_error("kernel undefined at this (N, n): the expansion needs N >= 4 and 2 <= n <= N-2");
  }

  EdgeworthModel m;
  m.population_size = N;
  m.sample_size = n;
  m.p = static_cast<double>(n) / N;
  m.q = 1.0 - m.p;
  m.tau = std::sqrt(static_cast<double>(N) * m.p * m.q);
  m.n_star = std::min(n, N - n);
  m.mean_l = expected_L(p, w);

  KernelSet kernels(p, w);
  std::vector<double> g1 = kernels.g1_table(workers);
  LinearMoments lm = linear_moments(g1);
  m.sigma1 = lm.sigma1;
  m.alpha = lm.alpha;
  m.kappa = kappa_moment(kernels, g1, m.tau, m.sigma1);

  SigmaSpec effective = sigma;
  if (effective.mode == SigmaMode::kAuto) {
    effective.mode = enumeration::subset_count(N, n) <= 1e6 ? SigmaMode::kExact
                                                            : SigmaMode::kMonteCarlo;
  }
  m.sigma_tilde = sigma_tilde(p, w, effective, &m.sigma_tilde_stderr);
  switch (effective.mode) {
    case SigmaMode::kExact:
      m.sigma_mode = "exact";
      break;
    case SigmaMode::kMonteCarlo:
      m.sigma_mode = "montecarlo(R=" + std::to_string(effective.replicates) + ")";
      break;
    case SigmaMode::kLinear:
      m.sigma_mode = "linear";
      break;
    case SigmaMode::kAuto:
      break;
  }
  if (!(m.sigma_tilde > 0.0)) {
    throw DegenerateStatistic("sigma_tilde = 0; the normalized statistic is degenerate");
  }

  m.e_coeff = ((m.q - m.p) * m.alpha + 3.0 * m.kappa) / (6.0 * m.tau);
  return m;
}

double EdgeworthModel::cdf(double x) const {
  // third derivative of Phi: (x^2 - 1) phi(x)
  return normal_cdf(x) - e_coeff * (x * x - 1.0) * normal_pdf(x);
}

double EdgeworthModel::cdf_clipped(double x) const {
  return std::min(1.0, std::max(0.0, cdf(x)));
}

double EdgeworthModel::quantile(double prob) const {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::domain_error("quantile: probability must lie in (0, 1)");
  }
  constexpr double kTol = 1e-12;
  constexpr double kLo = -10.0, kHi = 10.0;
  auto f = [this, prob](double x) { return cdf(x) - prob; };

  double x0 = std::min(kHi, std::max(kLo, normal_quantile(prob)));
  if (std::abs(f(x0)) <= kTol) return x0;
  // Expand a bracket around the normal quantile so that, among multiple
  // roots of a pathological expansion, the one nearest x0 is targeted.
  double a = x0, b = x0;
  double fa = f(a), fb = f(b);
  double h = 0.125;
  while ((fa > 0.0) == (fb > 0.0)) {
    bool grew = false;
    if (a > kLo) {
      a = std::max(kLo, a - h);
      fa = f(a);
      grew = true;
    }
    if ((fa > 0.0) == (fb > 0.0) && b < kHi) {
      b = std::min(kHi, b + h);
      fb = f(b);
      grew = true;
    }
    if (!grew) {
      throw std::domain_error("quantile: no sign change on [-10, 10]");
    }
    h *= 2.0;
  }
  double mid = 0.5 * (a + b);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (a + b);
    double fm = f(mid);
    if (std::abs(fm) <= kTol) return mid;
    if ((fm > 0.0) == (fb > 0.0)) {
      b = mid;
      fb = fm;
    } else {
      a = mid;
      fa = fm;
    }
  }
  return mid;
}

std::string EdgeworthModel::report() const {
  std::string out;
  out += "N = " + std::to_string(population_size) + "\n";
  out += "n = " + std::to_string(sample_size) + "\n";
  out += "p = " + fmt_full(p) + "\n";
  out += "q = " + fmt_full(q) + "\n";
  out += "tau = " + fmt_full(tau) + "\n";
  out += "n_star = " + std::to_string(n_star) + "\n";
  out += "sigma1 = " + fmt_full(sigma1) + "\n";
  out += "alpha = " + fmt_full(alpha) + "\n";
  out += "kappa = " + fmt_full(kappa) + "\n";
  out += "sigma_tilde = " + fmt_full(sigma_tilde) + "\n";
  out += "sigma_tilde_stderr = " + fmt_full(sigma_tilde_stderr) + "\n";
  out += "e_coeff = " + fmt_full(e_coeff) + "\n";
  out += "mean_L = " + fmt_full(mean_l) + "\n";
  out += "sigma_mode = " + sigma_mode + "\n";
  return out;
}

double charfn_sup(const std::vector<double>& g1, double sigma1, double lo,
                  double hi, double grid_step) {
  if (!(sigma1 > 0.0)) throw std::domain_error("charfn_sup: sigma1 must be positive");
  if (!(0.0 <= lo && lo < hi)) throw std::domain_error("charfn_sup: need 0 <= lo < hi");
  if (!(grid_step > 0.0)) throw std::domain_error("charfn_sup: grid_step must be positive");

  std::vector<double> y(g1.size());
  for (std::size_t i = 0; i < g1.size(); ++i) y[i] = g1[i] / sigma1;
  const double invN = 1.0 / static_cast<double>(y.size());

  auto modulus = [&y, invN](double t) {
    KahanSum re, im;
    for (double v : y) {
      re.add(std::cos(t * v));
      im.add(std::sin(t * v));
    }
    double cr = re.value() * invN, ci = im.value() * invN;
    return std::hypot(cr, ci);
  };

  double best = 0.0, best_t = lo;
  for (double t = lo;; t += grid_step) {
    if (t > hi) t = hi;
    double v = modulus(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
    if (t >= hi) break;
  }

  // One golden-section refinement around the grid argmax.
  double a = std::max(lo, best_t - grid_step);
  double b = std::min(hi, best_t + grid_step);
  const double gr = 0.6180339887498949;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = modulus(c), fd = modulus(d);
  for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = modulus(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = modulus(d);
    }
  }
  best = std::max(best, std::max(fc, fd));
  return std::min(best, 1.0);
}

}  // namespace fpl
