#include "rwm/errors.hpp"

namespace rwm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroBase: return "ZeroBase";
    case ErrorKind::NonIntegerOmega: return "NonIntegerOmega";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSL2Z: return "NotSL2Z";
    case ErrorKind::InconsistentMultiplier: return "InconsistentMultiplier";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::SeriesOverflow: return "SeriesOverflow";
    case ErrorKind::TailTooLarge: return "TailTooLarge";
    case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::CuspNotRational: return "CuspNotRational";
    case ErrorKind::Divergent: return "Divergent";
    case ErrorKind::ResonantFrequency: return "ResonantFrequency";
    case ErrorKind::NotPolynomial: return "NotPolynomial";
    case ErrorKind::IncompatibleWeights: return "IncompatibleWeights";
    case ErrorKind::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorKind::NonSingularCusp: return "NonSingularCusp";
    case ErrorKind::OutsideConvergence: return "OutsideConvergence";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::NegativeWeightForm: return "NegativeWeightForm";
  }
  return "Unknown";
}

}  // namespace rwm
