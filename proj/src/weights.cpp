#include "fpl/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpl {

WeightScheme::WeightScheme(std::vector<double> c, std::string origin)
    : c_(std::move(c)), origin_(std::move(origin)) {
  if (c_.empty()) throw std::domain_error("weight sequence must be non-empty");
  for (double v : c_) {
    if (!std::isfinite(v)) throw std::domain_error("weights must be finite");
  }
}

WeightScheme WeightScheme::from_values(std::vector<double> c, std::string origin) {
  return WeightScheme(std::move(c), std::move(origin));
}

WeightScheme WeightScheme::constant(int n) {
  if (n < 1) throw std::domain_error("sample size must be >= 1");
  return WeightScheme(std::vector<double>(static_cast<std::size_t>(n), 1.0),
                      "constant");
}

WeightScheme WeightScheme::gini(int n) {
  if (n < 2) throw std::domain_error("gini weights need n >= 2");
  // c_j = (n+1) J(j/(n+1)) / (n-1) with J(u) = 2(2u - 1).
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    double u = static_cast<double>(j) / (n + 1);
    c[static_cast<std::size_t>(j - 1)] = (n + 1) * 2.0 * (2.0 * u - 1.0) / (n - 1);
  }
  return WeightScheme(std::move(c), "gini");
}

WeightScheme WeightScheme::trimmed(int n, double t1, double t2) {
  if (n < 1) throw std::domain_error("sample size must be >= 1");
  if (!(0.0 < t1 && t1 < t2 && t2 < 1.0)) {
    throw std::domain_error("trimming parameters need 0 < t1 < t2 < 1");
  }
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (int j = 1; j <= n; ++j) {
    double u = static_cast<double>(j) / (n + 1);
    if (t1 < u && u < t2) c[static_cast<std::size_t>(j - 1)] = 1.0 / (t2 - t1);
  }
  return WeightScheme(std::move(c), "trimmed(" + std::to_string(t1) + "," +
                                        std::to_string(t2) + ")");
}

WeightScheme WeightScheme::center(int n) {
  if (n < 1) throw std::domain_error("sample size must be >= 1");
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    double u = static_cast<double>(j) / (n + 1);
    c[static_cast<std::size_t>(j - 1)] = 6.0 * u * (1.0 - u);
  }
  return WeightScheme(std::move(c), "center");
}

WeightScheme WeightScheme::from_score_table(
    std::vector<std::pair<double, double>> table, int n) {
  if (n < 1) throw std::domain_error("sample size must be >= 1");
  if (table.empty()) throw std::domain_error("score table must be non-empty");
  std::sort(table.begin(), table.end());
  auto eval = [&table](double u) {
    if (u <= table.front().first) return table.front().second;
    if (u >= table.back().first) return table.back().second;
    auto hi = std::lower_bound(
        table.begin(), table.end(), u,
        [](const std::pair<double, double>& e, double v) { return e.first < v; });
    auto lo = hi - 1;
    double span = hi->first - lo->first;
    if (span <= 0.0) return hi->second;
    double w = (u - lo->first) / span;
    return lo->second + w * (hi->second - lo->second);
  };
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    c[static_cast<std::size_t>(j - 1)] = eval(static_cast<double>(j) / (n + 1));
  }
  return WeightScheme(std::move(c), "custom");
}

std::vector<double> WeightScheme::difference(int v) const {
  int size = n();
  if (v < 0 || v >= size) {
    throw std::domain_error("difference order must satisfy 0 <= v <= n-1");
  }
  std::vector<double> d = c_;
  for (int round = 0; round < v; ++round) {
    for (std::size_t j = d.size() - 1; j >= 1; --j) d[j] -= d[j - 1];
    d.erase(d.begin());
  }
  return d;
}

SmoothnessReport WeightScheme::smoothness() const {
  int size = n();
  SmoothnessReport r;
  auto scaled_max = [this, size](int v) {
    if (v >= size) return 0.0;
    std::vector<double> d = difference(v);
    double m = 0.0;
    for (double x : d) m = std::max(m, std::abs(x));
    return m * std::pow(static_cast<double>(size), v);
  };
  r.a = scaled_max(0);
  r.b = scaled_max(1);
  r.c = scaled_max(2);
  r.d = scaled_max(3);
  return r;
}

}  // namespace fpl
