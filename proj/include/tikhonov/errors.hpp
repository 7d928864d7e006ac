#pragma once

#include <stdexcept>
#include <string>

namespace tikhonov {

// Base of every error thrown by the library. kind() is the stable class name
// the CLI prints and maps to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define TIKHONOV_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  }

TIKHONOV_DEFINE_ERROR(InvalidFieldError);
TIKHONOV_DEFINE_ERROR(DimensionError);
TIKHONOV_DEFINE_ERROR(RangeError);
TIKHONOV_DEFINE_ERROR(NotRealValuedError);
TIKHONOV_DEFINE_ERROR(ParameterError);
TIKHONOV_DEFINE_ERROR(ProvenanceError);
TIKHONOV_DEFINE_ERROR(NumericalError);
TIKHONOV_DEFINE_ERROR(DomainError);
TIKHONOV_DEFINE_ERROR(ConfigError);
TIKHONOV_DEFINE_ERROR(CalibrationError);
TIKHONOV_DEFINE_ERROR(IoError);

#undef TIKHONOV_DEFINE_ERROR

}  // namespace tikhonov
