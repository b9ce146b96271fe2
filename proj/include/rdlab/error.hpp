#pragma once

#include <stdexcept>
#include <string>

namespace rdlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments violate an operation's preconditions (non-finite data, wrong sizes, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A model or run configuration is malformed or incomplete.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not available for this kind of system.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// Reaction stepping could not keep the state non-negative; the problem is too stiff
/// for the explicit reaction substep.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidInput(message);
}

inline void require_config(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

}  // namespace detail
}  // namespace rdlab
