#pragma once
#include <stdexcept>
#include <string>

namespace pervarr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Inverse of a rank-deficient matrix was requested.
struct SingularError : Error {
  using Error::Error;
};

struct InputError : Error {
  using Error::Error;
};

// A module failed validation where a validated one was required.
struct InvalidModuleError : Error {
  using Error::Error;
};

struct ValidationFailedError : Error {
  using Error::Error;
};

// Double representation fails monotonicity/transitivity/invertibility.
struct NotInAError : Error {
  using Error::Error;
};

struct NotCodim2Error : Error {
  using Error::Error;
};

struct NotAFlatError : Error {
  using Error::Error;
};

struct NotSupportedOnClosedError : Error {
  using Error::Error;
};

struct NotFiniteTypeError : Error {
  using Error::Error;
};

struct NotCrystallographicError : Error {
  using Error::Error;
};

struct IllDefinedActionError : Error {
  using Error::Error;
};

}  // namespace pervarr
