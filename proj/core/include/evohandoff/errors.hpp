#pragma once

#include <stdexcept>
#include <string>

namespace evohandoff {

/// Precondition violated by a numeric argument (negative time, zero horizon, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed fuzzy set, variable, rule base or chromosome at construction time.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every output term has zero firing strength, so there is no centroid.
class NoActivation : public std::runtime_error {
 public:
  NoActivation() : std::runtime_error("fuzzy activation is empty; centroid undefined") {}
};

class EmptyHistory : public std::runtime_error {
 public:
  EmptyHistory() : std::runtime_error("history window holds no recorded time units") {}
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration; key() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace evohandoff
