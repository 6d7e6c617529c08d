#pragma once

#include <stdexcept>
#include <string>

namespace smc {

// Process exit codes used by the CLI; each error class maps to one of them.
enum class ExitCode : int {
  Ok = 0,
  Usage = 1,
  Infeasible = 2,
  FitFailure = 3,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::Usage; }
};

// Bad arguments: out-of-range K, invalid algorithm/strategy pairing, malformed input.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Work estimate above the configured budget (enumeration caps, evaluation caps).
class BudgetExceeded : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::Infeasible; }
};

// Rank-deficient designs, too few points, or non-recoverable curve-fit failures.
class FitError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::FitFailure; }
};

}  // namespace smc
