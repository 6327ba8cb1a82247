#include "etlab/error.hpp"

namespace etlab {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonFinite: return "NonFinite";
    case Errc::ToleranceNotMet: return "ToleranceNotMet";
    case Errc::PoleOnBoundary: return "PoleOnBoundary";
    case Errc::DegenerateInterval: return "DegenerateInterval";
    case Errc::EmptyMeasure: return "EmptyMeasure";
    case Errc::NotEven: return "NotEven";
    case Errc::ZeroDiscrepancy: return "ZeroDiscrepancy";
    case Errc::DomainError: return "DomainError";
    case Errc::AtDirac: return "AtDirac";
    case Errc::LambdaTooLarge: return "LambdaTooLarge";
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::RootsUnavailable: return "RootsUnavailable";
    case Errc::NonRationalWeights: return "NonRationalWeights";
    case Errc::NegativeDensity: return "NegativeDensity";
    case Errc::QTooSmall: return "QTooSmall";
    case Errc::IntervalTooCoarse: return "IntervalTooCoarse";
    case Errc::NonConvergence: return "NonConvergence";
    case Errc::HNonpositive: return "HNonpositive";
    case Errc::KNonpositive: return "KNonpositive";
    case Errc::InputError: return "InputError";
  }
  return "Unknown";
}

}  // namespace etlab
