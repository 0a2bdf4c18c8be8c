#pragma once

#include <stdexcept>
#include <string>

namespace groupshift {

enum class ErrorKind {
  UnknownSymbol,
  ResourceLimit,
  AlphabetMismatch,
  DegenerateK,
  OutOfBall,
  IncompleteSupport,
  InsufficientPrefix,
  BadLength,
  UndecodableWindow,
  DisplacementNotGenerator,
  BallTooSmall,
  SeedFailure,
  Schema,
};

const char* to_string(ErrorKind kind);

/// Base of every exception raised by the library. The kind mirrors the error
/// names used in the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace groupshift
