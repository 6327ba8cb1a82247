#pragma once

#include <vector>

#include "etlab/measures.hpp"

namespace etlab {

// psi_a(x) = max(1 - |x|/a, 0)/a
double mollifier(double x, double a);

// (rho * psi_a) at theta_j = j/grid_n; a defaults to 2/grid_n
std::vector<double> mollify(const MixedMeasureT& rho, int grid_n, double a = 0.0);

// density samples at theta_j = j/grid_n: exact for smooth families without diracs, mollified otherwise
std::vector<double> smooth_samples(const MixedMeasureT& rho, int grid_n);

struct ConjugatePair {
  std::vector<double> u;  // -(1/pi) W * rho
  std::vector<double> v;  // int_0^theta (1 - rho), mean zero
};
ConjugatePair conjugate_pair(const std::vector<double>& rho, int grid_n);

struct GaneliusReport {
  double H;  // max u
  double K;  // max (1 - rho)
  double osc_v;
  double bound;  // sqrt(2 pi) sqrt(H K)
  bool holds;
  double ratio;
};
GaneliusReport ganelius_check(const std::vector<double>& rho);

}  // namespace etlab
