#pragma once

#include <stdexcept>
#include <string>

namespace fpl {

// Input text that failed to decode (population files, weight tables, configs).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// An enumeration guard tripped: the request is legal but too large to
// compute exactly.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Statistic with zero variance; the normalized quantities are undefined.
class DegenerateStatistic : public std::domain_error {
 public:
  explicit DegenerateStatistic(const std::string& what)
      : std::domain_error(what) {}
};

}  // namespace fpl
