#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fpl {

// Realized smoothness constants of a weight sequence:
//   a = max_j |D^0 c_j|, b = n max_{j>=2} |D^1 c_j|,
//   c = n^2 max_{j>=3} |D^2 c_j|, d = n^3 max_{j>=4} |D^3 c_j|.
// Orders with an empty index range report 0.
struct SmoothnessReport {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

// Weight sequence c_1..c_n of an L-statistic (1/n) sum c_j X_{j:n}.
// Immutable value type.
class WeightScheme {
 public:
  // Explicit list.
  static WeightScheme from_values(std::vector<double> c, std::string origin = "explicit");

  // Score-function generation c_j = J(j/(n+1)).
  static WeightScheme constant(int n);                          // J == 1
  static WeightScheme gini(int n);                              // J(u)=2(2u-1), prefactor (n+1)/(n-1)
  static WeightScheme trimmed(int n, double t1, double t2);     // J(u)=1{t1<u<t2}/(t2-t1)
  static WeightScheme center(int n);                            // J(u)=6u(1-u)

  // Custom tabulated J: (u, J(u)) pairs, linearly interpolated on (0,1).
  // Queries outside the tabulated u-range clamp to the end values.
  static WeightScheme from_score_table(std::vector<std::pair<double, double>> table, int n);

  int n() const { return static_cast<int>(c_.size()); }
  const std::vector<double>& c() const { return c_; }
  const std::string& origin() const { return origin_; }

  // Forward differences D^v(c_j), j = v+1..n (length n-v); unscaled.
  // D^0 is the sequence itself. Requires 0 <= v <= n-1.
  std::vector<double> difference(int v) const;

  SmoothnessReport smoothness() const;

 private:
  WeightScheme(std::vector<double> c, std::string origin);

  std::vector<double> c_;
  std::string origin_;
};

}  // namespace fpl
