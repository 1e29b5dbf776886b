#pragma once

#include <stdexcept>
#include <string>

namespace sortal {

enum class ErrorKind {
  UnknownSort,
  UnknownVariable,
  DuplicateName,
  ArityMismatch,
  SortMismatch,
  ContextMismatch,
  NonCanonicalContext,
  SignatureMismatch,
  DomainMismatch,
  IndexOutOfRange,
  DepthExceeded,
  TableTooLarge,
  UnboundCloneVariable,
  BoundTooLarge,
  TypingError,
  EndpointMismatch,
  ModelNotAModel,
  NotAHomomorphism,
  InvariantViolation,
  SyntaxError,
  UnresolvedName,
};

const char* kind_name(ErrorKind kind);

/// Every engine failure. `kind()` is stable, the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Error raised by the declaration-language parser, with a 1-based location.
class SourceError : public Error {
 public:
  SourceError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace sortal
