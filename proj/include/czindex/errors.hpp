#pragma once

#include <stdexcept>
#include <string>

namespace czindex {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonFiniteEntry : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class NotLagrangian : public Error {
 public:
  using Error::Error;
};

class NotTransverse : public Error {
 public:
  using Error::Error;
};

/// Consecutive path samples admit no common chart with the required margin.
/// The remedy is always to refine the sampling of the offending path.
class ChartGapError : public Error {
 public:
  using Error::Error;
};

class PathSynthesisError : public Error {
 public:
  using Error::Error;
};

class EigenvalueOne : public Error {
 public:
  using Error::Error;
};

class PsiNotInSp0 : public Error {
 public:
  using Error::Error;
};

class PhiNotInSpPsi : public Error {
 public:
  using Error::Error;
};

class DegenerateEndpoint : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class SingularK : public Error {
 public:
  using Error::Error;
};

class NotFree : public Error {
 public:
  using Error::Error;
};

class NotInSp0 : public Error {
 public:
  using Error::Error;
};

class NonIntegerResult : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

class CalibrationAmbiguous : public Error {
 public:
  using Error::Error;
};

/// JSON document failed structural validation. `pointer` locates the
/// offending field in JSON-pointer syntax.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : Error(what + " (at " + pointer + ")"), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace czindex
