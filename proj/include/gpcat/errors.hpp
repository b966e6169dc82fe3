#pragma once

#include <stdexcept>
#include <string>

namespace gpcat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scale guards.
struct CapExceeded : Error { using Error::Error; };
struct ScaleGuard : Error { using Error::Error; };
struct ChainCap : Error { using Error::Error; };

// Bad mathematical input.
struct NotBijection : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct NotAPartialOrder : Error { using Error::Error; };
struct LinkNotInStabilizer : Error { using Error::Error; };
struct NotRadical : Error { using Error::Error; };
struct NotFunctorial : Error { using Error::Error; };
struct EmptySelection : Error { using Error::Error; };
struct IncompatibleInputs : Error { using Error::Error; };
struct DegreeOutOfRange : Error { using Error::Error; };
struct DisconnectedBasepoint : Error { using Error::Error; };
struct ValidationFailed : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };

// Malformed serialized input; `pointer` locates the offending field.
struct SchemaError : Error {
  std::string pointer;
  SchemaError(std::string ptr, const std::string& msg)
      : Error(ptr + ": " + msg), pointer(std::move(ptr)) {}
};

}  // namespace gpcat
