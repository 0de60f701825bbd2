#pragma once

#include <stdexcept>
#include <string>

namespace twophoton {

enum class ErrorCode {
  Domain = 1,
  InvalidArgument,
  Config,
  Io,
  Resolution,
  Budget,
  UnsupportedShape,
  NotFound,
  InvalidMetrics,
  FitFailure,
  Tolerance,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Non-finite argument or argument outside an operation's domain.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

// Quadrature grid too coarse for the requested detector coordinates.
class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& what) : Error(ErrorCode::Resolution, what) {}
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(ErrorCode::Budget, what) {}
};

class UnsupportedShape : public Error {
 public:
  explicit UnsupportedShape(const std::string& what) : Error(ErrorCode::UnsupportedShape, what) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& what) : Error(ErrorCode::NotFound, what) {}
};

class InvalidMetrics : public Error {
 public:
  explicit InvalidMetrics(const std::string& what) : Error(ErrorCode::InvalidMetrics, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

// Config errors carry the dotted key path they refer to (may be empty for
// syntax errors that are not attached to a key).
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& reason)
      : Error(ErrorCode::Config, key.empty() ? reason : key + ": " + reason), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class ToleranceError : public Error {
 public:
  explicit ToleranceError(const std::string& what) : Error(ErrorCode::Tolerance, what) {}
};

}  // namespace twophoton
