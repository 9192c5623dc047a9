#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fpl {

// Ordered finite population x_1 <= ... <= x_N with the boundary convention
// x_0 = x_1 and x_{N+1} = x_N. Coincident values stay distinct units, told
// apart by index; all combinatorial formulas downstream operate on indices.
// Immutable after construction.
class Population {
 public:
  // Sorts the input; callers never supply order. Requires N >= 2 and all
  // values finite.
  static Population from_values(std::vector<double> values);

  // One decimal value per line; a single leading line starting with '#' is
  // skipped as a header. Blank lines are ignored.
  static Population load(std::istream& in);
  static Population load_file(const std::string& path);

  // Inverse-transform draws from the logistic distribution
  // H(x) = 1/(1+e^-x), reproducible bit-for-bit given (count, seed).
  static Population simulate_logistic(int count, std::uint64_t seed);

  int size() const { return static_cast<int>(x_.size()); }
  const std::vector<double>& values() const { return x_; }

  // 1-based unit access, k in 1..N.
  double value(int k) const;

  // Spacing d_i = x_{i+1} - x_i for i in 0..N; d_0 = d_N = 0 by the boundary
  // convention.
  double spacing(int i) const;
  std::vector<double> spacings() const;

  double mean() const { return mean_; }
  double central_variance() const;

  // (1/N) sum x^s, or (1/N) sum |x|^s when absolute is set.
  double moment(double s, bool absolute) const;

  // F(y) = (1/N) #  { x_i <= y }, right-continuous.
  double cdf(double y) const;

  struct Ghm {
    double g;  // G(x_k) = sum_{i<k} (i/N) d_i
    double h;  // H(x_k) = sum_{i>=k} (1-i/N) d_i
    double m;  // M(x_k) = sum_{i<k} (i/N)(1-i/N) d_i
  };
  Ghm ghm_at(int k) const;

 private:
  explicit Population(std::vector<double> sorted);

  std::vector<double> x_;
  double mean_ = 0.0;
};

}  // namespace fpl
