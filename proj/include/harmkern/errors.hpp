#pragma once

#include <stdexcept>
#include <string>

namespace harmkern {

// Operand kinds cannot be composed, or a symbol of the wrong kind was passed.
struct KindError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested depth exceeds what the Taylor truncation supports.
struct TruncationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EllipticityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Centre evaluation left a non-radial term.
struct RadialityError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularPointError : std::domain_error {
  using std::domain_error::domain_error;
};

struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace harmkern
