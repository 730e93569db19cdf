#pragma once

#include <stdexcept>
#include <string>

namespace bose {

/// Process exit codes shared by the CLI and the error hierarchy.
enum class ExitCode : int {
  ok = 0,
  verification_failure = 1,
  config_error = 2,
  domain_error = 3,
  numeric_error = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Input outside the mathematical domain of an operation (negative radius,
/// density too large for the dilute regime, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ExitCode::domain_error, what) {}
};

/// Quadrature, ODE or series failed to reach the requested tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double achieved = 0.0)
      : Error(ExitCode::numeric_error, what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::config_error, what) {}
};

class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(ExitCode::verification_failure, what) {}
};

}  // namespace bose
