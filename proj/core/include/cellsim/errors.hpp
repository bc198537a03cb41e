#pragma once

#include <stdexcept>
#include <string>

namespace cellsim {

// Exclusion constraints could not be satisfied within the retry budget.
class PlacementInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bracket expansion for a monotone inversion ran out of range.
class BracketFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the domain of the numeric kernel.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configuration key is unknown or out of range; carries the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// No trial completed, so there is nothing to aggregate.
class EmptyAggregate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cellsim
