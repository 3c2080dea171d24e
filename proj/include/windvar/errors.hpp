#pragma once

#include <stdexcept>
#include <string>

namespace windvar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative speed, f <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input data (short series, mismatched sampling, unknown ids).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration (Nyquist violation, window shorter than dt, schema errors).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown, e.g. an indefinite coherence matrix.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A ratio or index whose denominator vanishes.
class UndefinedError : public Error {
 public:
  using Error::Error;
};

}  // namespace windvar
