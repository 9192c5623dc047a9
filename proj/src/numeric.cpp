#include "fpl/numeric.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fpl {

namespace {

constexpr long long kFactCache = 131072;

const std::vector<long double>& lfact_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kFactCache + 1);
    t[0] = 0.0L;
    for (long long k = 1; k <= kFactCache; ++k) {
      t[k] = lgammal(static_cast<long double>(k) + 1.0L);
    }
    return t;
  }();
  return table;
}

}  // namespace

long double lfactorial(long long k) {
  if (k < 0) throw std::domain_error("lfactorial: negative argument");
  if (k <= kFactCache) return lfact_table()[static_cast<std::size_t>(k)];
  return lgammal(static_cast<long double>(k) + 1.0L);
}

long double lchoose(long long u, long long v) {
  if (choose_is_zero(u, v)) {
    return -std::numeric_limits<long double>::infinity();
  }
  return lfactorial(u) - lfactorial(v) - lfactorial(u - v);
}

double choose(long long u, long long v) {
  if (choose_is_zero(u, v)) return 0.0;
  v = std::min(v, u - v);
  long double r = 1.0L;
  for (long long t = 1; t <= v; ++t) {
    r = r * static_cast<long double>(u - v + t) / static_cast<long double>(t);
    if (r > 1e300L) return std::numeric_limits<double>::infinity();
  }
  double d = static_cast<double>(r);
  return d < 9.0e15 ? std::round(d) : d;
}

double normal_pdf(double x) {
  static const double kInvSqrt2Pi = 0.3989422804014326779;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

namespace {

// Acklam's rational approximation to the inverse normal CDF (~1.15e-9
// relative before refinement).
double acklam(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  }
  double x = acklam(p);
  // Halley refinement against the erfc-based CDF.
  for (int it = 0; it < 2; ++it) {
    double e = normal_cdf(x) - p;
    double u = e / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace fpl
