#include "groupshift/errors.hpp"

namespace groupshift {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::DegenerateK: return "DegenerateK";
    case ErrorKind::OutOfBall: return "OutOfBall";
    case ErrorKind::IncompleteSupport: return "IncompleteSupport";
    case ErrorKind::InsufficientPrefix: return "InsufficientPrefix";
    case ErrorKind::BadLength: return "BadLength";
    case ErrorKind::UndecodableWindow: return "UndecodableWindow";
    case ErrorKind::DisplacementNotGenerator: return "DisplacementNotGenerator";
    case ErrorKind::BallTooSmall: return "BallTooSmall";
    case ErrorKind::SeedFailure: return "SeedFailure";
    case ErrorKind::Schema: return "SchemaError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace groupshift
