#pragma once

#include <stdexcept>
#include <string>

namespace saea {

/// A numeric argument is outside the domain an operation accepts.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The caller combined otherwise valid values in an unsupported way.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point lies outside the extended search space.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An experiment configuration cannot be resolved.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace saea
