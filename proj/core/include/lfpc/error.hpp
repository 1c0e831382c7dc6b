#pragma once

#include <stdexcept>
#include <string>

namespace lfpc {

// Base of every error raised by the library. The CLI maps all of these to
// exit code 1; argument-parsing problems never reach this hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or insufficient input: gaps, short samples, bad flags in a spec.
class InputError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Degenerate regression design (rank deficiency, zero-variance predictor).
class EstimationError : public Error {
 public:
  using Error::Error;
};

// Remote source could not be reached and no cached copy exists.
class RetrievalError : public Error {
 public:
  using Error::Error;
};

// Payload or file content that cannot be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lfpc
