#pragma once

#include <optional>
#include <utility>

#include "etlab/kernels.hpp"
#include "etlab/measures.hpp"
#include "etlab/polynomials.hpp"

namespace etlab {

// endpoint masses (m1 at a, m2 at b) with the 0th and 1st moments of rho on [a, b]
std::pair<double, double> moment_match_cell(const Integrand& rho, double a, double b);
// same, from precomputed moments: mass and int (x - a) rho
std::pair<double, double> moment_match_moments(double mass, double moment, double a, double b);

// diracs kept, each cell [j/n, (j+1)/n] replaced by endpoint masses
EmpiricalMeasure discretize_measure(const MixedMeasureT& rho, int n);

enum class Apportion { LargestRemainder, Cumulative };
// weights p_j/q with sum p_j = q; zero atoms dropped
EmpiricalMeasure rationalize(const EmpiricalMeasure& rho, int q, Apportion mode = Apportion::LargestRemainder);

struct StageStats {
  double D;
  double H;
  double G;
};

struct SharpnessReport {
  double m;
  int n;
  int q;
  StageStats continuum;
  StageStats discrete;
  StageStats rational;
  std::optional<EtReport> polynomial;  // only when synthesis is requested
};

SharpnessReport sharpness_pipeline(double m, int n, int q, bool synthesize = false,
                                   Apportion mode = Apportion::LargestRemainder);

}  // namespace etlab
