// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace illspec {

/// Bad input: malformed arguments, out-of-domain values, unsupported operator.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical contract was violated (non-symmetric Gram, significantly
/// negative eigenvalue, broken identity). Indicates a bug upstream.
class NumericalContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested tolerance cannot be met. Carries the best value reached.
class ToleranceUnachievable : public std::runtime_error {
 public:
  ToleranceUnachievable(const std::string& what, double achieved, int depth = -1)
      : std::runtime_error(what), achieved_(achieved), depth_(depth) {}

  double achieved() const noexcept { return achieved_; }
  int depth() const noexcept { return depth_; }

 private:
  double achieved_;
  int depth_;
};

}  // namespace illspec
