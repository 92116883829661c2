#pragma once

#include <stdexcept>
#include <string>

namespace mfpod {

/// Broad failure categories; the CLI maps these onto process exit codes
/// (usage -> 1, data -> 2, numeric -> 3).
enum class ErrorKind { Usage, Data, Numeric };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& category, const std::string& message)
      : std::runtime_error(category + ": " + message), kind_(kind), category_(category) {}

  ErrorKind kind() const { return kind_; }
  const std::string& category() const { return category_; }

private:
  ErrorKind kind_;
  std::string category_;
};

struct UsageError : Error {
  explicit UsageError(const std::string& m) : Error(ErrorKind::Usage, "usage", m) {}
};

struct InvalidDomainError : Error {
  explicit InvalidDomainError(const std::string& m) : Error(ErrorKind::Data, "invalid-domain", m) {}
};

struct EmptyInputError : Error {
  explicit EmptyInputError(const std::string& m) : Error(ErrorKind::Data, "empty-input", m) {}
};

struct ShapeError : Error {
  explicit ShapeError(const std::string& m) : Error(ErrorKind::Data, "shape", m) {}
};

struct GridMismatchError : Error {
  explicit GridMismatchError(const std::string& m) : Error(ErrorKind::Data, "grid-mismatch", m) {}
};

struct InvalidRankError : Error {
  explicit InvalidRankError(const std::string& m) : Error(ErrorKind::Data, "invalid-rank", m) {}
};

struct InvalidInputError : Error {
  explicit InvalidInputError(const std::string& m) : Error(ErrorKind::Data, "invalid-input", m) {}
};

struct IllPosedDataError : Error {
  explicit IllPosedDataError(const std::string& m) : Error(ErrorKind::Data, "ill-posed-data", m) {}
};

struct NestedDesignError : Error {
  explicit NestedDesignError(const std::string& m) : Error(ErrorKind::Data, "nested-design", m) {}
};

struct SizeError : Error {
  explicit SizeError(const std::string& m) : Error(ErrorKind::Data, "size", m) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(ErrorKind::Data, "config", m) {}
};

struct IoError : Error {
  explicit IoError(const std::string& m) : Error(ErrorKind::Data, "io", m) {}
};

struct ConditioningError : Error {
  explicit ConditioningError(const std::string& m) : Error(ErrorKind::Numeric, "conditioning", m) {}
};

struct InvalidStartError : Error {
  explicit InvalidStartError(const std::string& m) : Error(ErrorKind::Numeric, "invalid-start", m) {}
};

struct InfeasibleStartError : Error {
  explicit InfeasibleStartError(const std::string& m) : Error(ErrorKind::Numeric, "infeasible-start", m) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& m) : Error(ErrorKind::Numeric, "numeric", m) {}
};

}  // namespace mfpod
