#pragma once

#include <stdexcept>
#include <string>

namespace lure {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LURE_DECLARE_ERROR(Name)        \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

// numerics
LURE_DECLARE_ERROR(SingularMatrix);
LURE_DECLARE_ERROR(NoConvergence);
// pencil
LURE_DECLARE_ERROR(NotReducible);
LURE_DECLARE_ERROR(SingularPencil);
// lure
LURE_DECLARE_ERROR(PoleHit);
LURE_DECLARE_ERROR(GammaUnusable);
LURE_DECLARE_ERROR(IndefiniteResidual);
LURE_DECLARE_ERROR(ZeroReference);
LURE_DECLARE_ERROR(NotBasisForm);
// sda
LURE_DECLARE_ERROR(SingularIGH);
// gammaselect
LURE_DECLARE_ERROR(AllSingular);
// baselines
LURE_DECLARE_ERROR(SingularR);
LURE_DECLARE_ERROR(SignNoConvergence);
LURE_DECLARE_ERROR(NotGraphForm);
// problems
LURE_DECLARE_ERROR(DimensionMismatch);

#undef LURE_DECLARE_ERROR

/// Malformed problem file. Carries the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Precondition violated by the caller (bad shapes, non-positive parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace lure
