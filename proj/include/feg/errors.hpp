#pragma once

#include <stdexcept>
#include <string>

namespace feg {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

class AbsoluteContinuityViolation : public Error {
 public:
  using Error::Error;
};

class EmptySupport : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidResolution : public Error {
 public:
  using Error::Error;
};

class ChannelRequired : public Error {
 public:
  using Error::Error;
};

class InvalidUtility : public Error {
 public:
  using Error::Error;
};

class InvalidExponent : public Error {
 public:
  using Error::Error;
};

class InvalidFunction : public Error {
 public:
  using Error::Error;
};

class IllDefinedObjective : public Error {
 public:
  using Error::Error;
};

class RestrictedSupport : public Error {
 public:
  using Error::Error;
};

class InvalidBeta : public Error {
 public:
  using Error::Error;
};

class SamplerStalled : public Error {
 public:
  SamplerStalled(const std::string& what, long attempts)
      : Error(what), attempts_(attempts) {}
  long attempts() const { return attempts_; }

 private:
  long attempts_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

/// Raised by the file loaders; message carries line/field diagnostics.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace feg
