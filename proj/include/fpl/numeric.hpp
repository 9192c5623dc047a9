#pragma once

#include <cmath>
#include <cstdint>

namespace fpl {

// Neumaier-compensated accumulator. Signed cancellation across terms of the
// combinatorial sums must not cost more than ~1 ulp of the true result.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// true iff C(u, v) = 0 under the convention C(u,v)=0 for v<0, v>u or u<0.
inline bool choose_is_zero(long long u, long long v) {
  return v < 0 || u < 0 || v > u;
}

// log C(u, v) in extended precision; -inf when the value is 0 by convention.
long double lchoose(long long u, long long v);

// C(u, v) as a double (inf on overflow); exact for small arguments.
double choose(long long u, long long v);

// log k! in extended precision, cached.
long double lfactorial(long long k);

// Standard normal density, distribution function (via erfc) and quantile
// (Acklam's rational approximation polished with Halley steps; |err|<1e-15).
double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace fpl
