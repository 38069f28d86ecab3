#pragma once

#include <stdexcept>
#include <string>

namespace majbound {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raw vector cannot be interpreted as a probability-like vector
/// (entry below -1e-9, NaN, ...).
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

/// Two vectors fed to a binary lattice operation disagree in length or mass.
class IncompatibleVectors : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class EigensolverFailure : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidSpectrum : public Error {
 public:
  using Error::Error;
};

/// Measurement fails validation: non-orthonormal basis columns, effects that
/// are not PSD, or effects that do not sum to the identity.
class InvalidMeasurement : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Renyi order outside (0, inf).
class InvalidOrder : public Error {
 public:
  using Error::Error;
};

class NotUpperBound : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// Exhaustive subset enumeration would exceed the hard tuple budget.
class EnumerationLimit : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Input file violates the problem-spec schema; `field()` names the culprit.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& field, const std::string& what)
      : Error("field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace majbound
