#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ordgsd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An odds-ratio vector implies negative category probabilities for the
/// given control distribution.
class NonMonotoneResult : public Error {
 public:
  using Error::Error;
};

class WrongModel : public Error {
 public:
  using Error::Error;
};

/// Base for estimation failures that invalidate a simulated trial.
class EstimationFailure : public Error {
 public:
  using Error::Error;
};

class ChainDegenerate : public EstimationFailure {
 public:
  using EstimationFailure::EstimationFailure;
};

class FitFailure : public EstimationFailure {
 public:
  using EstimationFailure::EstimationFailure;
};

class TrialInvalid : public Error {
 public:
  using Error::Error;
};

class InsufficientDraws : public Error {
 public:
  using Error::Error;
};

class NoFeasiblePair : public Error {
 public:
  using Error::Error;
};

class TargetUnreachable : public Error {
 public:
  TargetUnreachable(const std::string& what, std::int64_t max_n, double max_power)
      : Error(what), max_n_(max_n), max_power_(max_power) {}

  std::int64_t max_n() const noexcept { return max_n_; }
  double max_power() const noexcept { return max_power_; }

 private:
  std::int64_t max_n_;
  double max_power_;
};

/// Configuration validation failure; `key()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config key '" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace ordgsd
