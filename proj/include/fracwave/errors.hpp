#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracwave {

/// Time-step search failed: carries the probe growth factor of each attempt.
class StabilityError : public std::runtime_error {
 public:
  StabilityError(std::string msg, std::vector<double> growth)
      : std::runtime_error(std::move(msg)), growth_factors(std::move(growth)) {}
  std::vector<double> growth_factors;
};

/// Dispersion root finding failed: carries the iterate history.
class NewtonError : public std::runtime_error {
 public:
  NewtonError(std::string msg, std::vector<std::complex<double>> iters)
      : std::runtime_error(std::move(msg)), iterates(std::move(iters)) {}
  std::vector<std::complex<double>> iterates;
};

/// Config file rejected; line == 0 means "not tied to a specific line".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, int line_no = 0)
      : std::runtime_error(line_no > 0 ? msg + " (line " + std::to_string(line_no) + ")" : msg),
        line(line_no) {}
  int line;
};

}  // namespace fracwave
