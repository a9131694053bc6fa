#pragma once

#include <stdexcept>
#include <string>

namespace bsc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidChromosome : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed or non-finite data, or an input file that cannot be parsed.
class DataError : public Error {
public:
  using Error::Error;
};

/// Training labels contain fewer than two classes.
class DegenerateLabels : public DataError {
public:
  using DataError::DataError;
};

/// Invalid configuration values or an unusable configuration file.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// An enumeration would exceed the configured size cap.
class CapExceeded : public Error {
public:
  CapExceeded(const std::string& what, std::string estimated)
      : Error(what), estimated_(std::move(estimated)) {}
  const std::string& estimated() const noexcept { return estimated_; }

private:
  std::string estimated_;
};

} // namespace bsc
