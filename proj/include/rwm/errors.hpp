#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rwm {

enum class ErrorKind {
  InvalidArgument,
  ZeroBase,
  NonIntegerOmega,
  DimensionMismatch,
  NotSL2Z,
  InconsistentMultiplier,
  NonUnitary,
  SeriesOverflow,
  TailTooLarge,
  UnsupportedGroup,
  NoConvergence,
  ToleranceNotMet,
  CuspNotRational,
  Divergent,
  ResonantFrequency,
  NotPolynomial,
  IncompatibleWeights,
  StencilOutOfDomain,
  NonSingularCusp,
  OutsideConvergence,
  InvalidDomain,
  NegativeWeightForm,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace rwm
