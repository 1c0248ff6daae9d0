#pragma once

#include <stdexcept>
#include <string>

namespace chshq {

/// Base of every error raised by the library. Callers that only need a
/// message can catch this; the subclasses let the CLI map failures onto
/// exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAPrimePower : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class MixedFields : public Error {
 public:
  MixedFields() : Error("operands belong to different fields") {}
  using Error::Error;
};

class InfeasibleDistribution : public Error {
 public:
  using Error::Error;
};

class InfeasibleParams : public Error {
 public:
  using Error::Error;
};

/// A formula or procedure was asked for outside the parameter region where
/// it is claimed.
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

class NotImprovable : public Error {
 public:
  using Error::Error;
};

class InvalidGameConfiguration : public Error {
 public:
  using Error::Error;
};

class CandidatesExhausted : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search refused because the search space exceeds its guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// Malformed input text (rationals, files).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace chshq
