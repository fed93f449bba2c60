#pragma once

#include <stdexcept>
#include <string>

namespace tscarma {

/// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorKind {
  validation,  // bad parameters, configs or model specifications
  numeric,     // a numerical routine failed to reach its tolerance
  unsupported  // a valid request outside what is implemented
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define TSCARMA_DEFINE_ERROR(Name, Kind)                                    \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

TSCARMA_DEFINE_ERROR(DomainError, validation)
TSCARMA_DEFINE_ERROR(ValidationError, validation)
TSCARMA_DEFINE_ERROR(ConfigError, validation)
TSCARMA_DEFINE_ERROR(ConvergenceError, numeric)
TSCARMA_DEFINE_ERROR(QuadratureError, numeric)
TSCARMA_DEFINE_ERROR(LinearAlgebraError, numeric)
TSCARMA_DEFINE_ERROR(ConsistencyError, numeric)
TSCARMA_DEFINE_ERROR(UnsupportedError, unsupported)

// Assumption violations on the CARMA polynomials.
TSCARMA_DEFINE_ERROR(ComplexRootError, validation)
TSCARMA_DEFINE_ERROR(NonNegativeRootError, validation)
TSCARMA_DEFINE_ERROR(RepeatedRootError, validation)
TSCARMA_DEFINE_ERROR(CommonRootError, validation)

#undef TSCARMA_DEFINE_ERROR

}  // namespace tscarma
