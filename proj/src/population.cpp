#include "fpl/population.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "fpl/errors.hpp"
#include "fpl/numeric.hpp"
#include "fpl/rng.hpp"

namespace fpl {

Population::Population(std::vector<double> sorted) : x_(std::move(sorted)) {
  KahanSum s;
  for (double v : x_) s.add(v);
  mean_ = s.value() / static_cast<double>(x_.size());
}

Population Population::from_values(std::vector<double> values) {
  if (values.size() < 2) {
    throw std::domain_error("population needs at least 2 values");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::domain_error("population values must be finite");
    }
  }
  std::sort(values.begin(), values.end());
  return Population(std::move(values));
}

Population Population::load(std::istream& in) {
  std::vector<double> values;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;  // blank
    if (line[first] == '#') {
      if (lineno == 1) continue;  // header
      throw ParseError("unexpected comment line", lineno);
    }
    std::size_t last = line.find_last_not_of(" \t\r");
    std::string token = line.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      double v = std::stod(token, &used);
      if (used != token.size() || !std::isfinite(v)) {
        throw std::invalid_argument(token);
      }
      values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("not a number: '" + token + "'", lineno);
    }
  }
  return from_values(std::move(values));
}

Population Population::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open population file: " + path);
  return load(in);
}

Population Population::simulate_logistic(int count, std::uint64_t seed) {
  if (count < 2) throw std::domain_error("population needs at least 2 values");
  CounterRng rng(seed, 0);
  std::vector<double> values(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    double u = rng.uniform01(static_cast<std::uint64_t>(i));
    values[static_cast<std::size_t>(i)] = std::log(u / (1.0 - u));
  }
  std::sort(values.begin(), values.end());
  return Population(std::move(values));
}

double Population::value(int k) const {
  if (k < 1 || k > size()) throw std::domain_error("population index out of range");
  return x_[static_cast<std::size_t>(k - 1)];
}

double Population::spacing(int i) const {
  int N = size();
  if (i < 0 || i > N) throw std::domain_error("spacing index out of range");
  if (i == 0 || i == N) return 0.0;  // x_0 = x_1, x_{N+1} = x_N
  return x_[static_cast<std::size_t>(i)] - x_[static_cast<std::size_t>(i - 1)];
}

std::vector<double> Population::spacings() const {
  int N = size();
  std::vector<double> d(static_cast<std::size_t>(N) + 1, 0.0);
  for (int i = 1; i < N; ++i) d[static_cast<std::size_t>(i)] = spacing(i);
  return d;
}

double Population::central_variance() const {
  KahanSum s;
  for (double v : x_) {
    double c = v - mean_;
    s.add(c * c);
  }
  return s.value() / static_cast<double>(x_.size());
}

double Population::moment(double s, bool absolute) const {
  KahanSum acc;
  for (double v : x_) {
    acc.add(absolute ? std::pow(std::abs(v), s) : std::pow(v, s));
  }
  return acc.value() / static_cast<double>(x_.size());
}

double Population::cdf(double y) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), y);
  return static_cast<double>(it - x_.begin()) / static_cast<double>(x_.size());
}

Population::Ghm Population::ghm_at(int k) const {
  int N = size();
  if (k < 1 || k > N) throw std::domain_error("ghm_at: index out of range");
  double invN = 1.0 / static_cast<double>(N);
  KahanSum g, h, m;
  for (int i = 1; i < k; ++i) {
    double frac = i * invN;
    double d = spacing(i);
    g.add(frac * d);
    m.add(frac * (1.0 - frac) * d);
  }
  for (int i = k; i <= N - 1; ++i) {
    h.add((1.0 - i * invN) * spacing(i));
  }
  return {g.value(), h.value(), m.value()};
}

}  // namespace fpl
