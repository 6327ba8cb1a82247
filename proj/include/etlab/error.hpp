#pragma once

#include <stdexcept>
#include <string>

namespace etlab {

enum class Errc {
  NonFinite,
  ToleranceNotMet,
  PoleOnBoundary,
  DegenerateInterval,
  EmptyMeasure,
  NotEven,
  ZeroDiscrepancy,
  DomainError,
  AtDirac,
  LambdaTooLarge,
  ZeroCoefficient,
  RootsUnavailable,
  NonRationalWeights,
  NegativeDensity,
  QTooSmall,
  IntervalTooCoarse,
  NonConvergence,
  HNonpositive,
  KNonpositive,
  InputError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace etlab
