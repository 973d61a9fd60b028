#pragma once

#include <stdexcept>
#include <string>

namespace fowt {

/// Parameters or options that violate a documented invariant.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A gain formula would divide by a vanishing sensitivity.
class GainSingularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root finder or solver failed to reach its residual tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Transfer matrix requested too close to a closed-loop pole.
class NearPole : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Configuration file or command-line problem.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fowt
