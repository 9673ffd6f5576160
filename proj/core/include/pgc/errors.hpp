#pragma once
// errors.hpp — error taxonomy shared by all modules.

#include <stdexcept>
#include <string>

namespace pgc {

enum class ErrorCode {
  ShapeMismatch,
  BadBasisIndex,
  IdentityOnRectangular,
  FreeCellPresent,
  RandomCellPresent,
  FreeCellCountMismatch,
  DimMismatch,
  CellKindMismatch,
  ArityMismatch,
  UnknownCell,
  DuplicateCellId,
  NotAdmissible,
  OddLabelCount,
  AssumptionViolated,
  TooLarge,
  BadTreeLiteral,
  NonPolynomialActivation,
  LeafModeMismatch,
  NoSuchLayer,
  PatternMismatch,
  NotNonCrossing,
  CapExceeded,
  PSDViolation,
  BadParameter,
  RationalOverflow,
  BadConfig,
  DegenerateFit,
  InvalidOperation,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace pgc
