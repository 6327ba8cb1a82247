#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "etlab/measures.hpp"

namespace etlab {

using cplx = std::complex<double>;

struct PolarRoot {
  double modulus;
  double angle;  // turns
};

// a polynomial given by coefficients a_0..a_n, or by roots and a leading coefficient
class PolynomialSpec {
 public:
  static PolynomialSpec from_coeffs(std::vector<cplx> coeffs);
  static PolynomialSpec from_roots(std::vector<PolarRoot> roots, cplx leading = 1.0);

  int degree() const { return degree_; }
  bool has_roots() const { return roots_.has_value(); }
  // RootsUnavailable for coefficient-only input
  const std::vector<PolarRoot>& roots() const;
  cplx leading() const { return leading_; }
  // expands the root form when needed; NonFinite if the expansion overflows
  const std::vector<cplx>& coeffs() const;
  bool has_coeffs() const { return coeffs_.has_value(); }

  // log|a_0| and log|a_n|, computed without expanding
  double log_abs_a0() const;
  double log_abs_an() const { return std::log(std::abs(leading_)); }

  cplx evaluate(cplx z) const;
  // log|f(e^{2 pi i theta})|
  double log_abs_on_circle(double theta) const;

 private:
  int degree_ = 0;
  cplx leading_ = 1.0;
  std::optional<std::vector<PolarRoot>> roots_;
  mutable std::optional<std::vector<cplx>> coeffs_;
  // distinct roots with multiplicities, for evaluation
  std::vector<PolarRoot> distinct_;
  std::vector<int> mult_;
};

// Aberth-Ehrlich iteration; returns a root-form copy of a coefficient polynomial
PolynomialSpec find_roots(const PolynomialSpec& f, int max_iter = 500, double tol = 1e-14);

struct MaxModulus {
  double value;  // max log|f| on |z| = 1
  double arg;    // angle in turns
};
// grid_n = 0 selects max(4096, 64 n); smaller explicit grids throw DomainError
MaxModulus max_log_modulus(const PolynomialSpec& f, int grid_n = 0);

double height_poly(const PolynomialSpec& f, int grid_n = 0);

int sector_count(const PolynomialSpec& f, double alpha, double beta);

EmpiricalMeasure root_measure(const PolynomialSpec& f);
DiscrepancyResult discrepancy_poly(const PolynomialSpec& f);

struct EtReport {
  double D;
  double H;
  double bound;
  IntervalT witness;
  double margin;
  bool holds;
};
EtReport check_et(const PolynomialSpec& f, int grid_n = 0);
std::string summary(const EtReport& r);

PolynomialSpec schur_reduce(const PolynomialSpec& f);

int count_at_angle(const PolynomialSpec& f, double theta);

struct RealRootReport {
  int n_plus;
  int n_minus;
  double bound;  // sqrt(2) sqrt(H) n
  bool holds;
};
RealRootReport real_root_check(const PolynomialSpec& f, int grid_n = 0);

// prod_j (z - e^{2 pi i theta_j})^{p_j} with p_j = q w_j
PolynomialSpec synthesize_poly(const EmpiricalMeasure& rho, int q);

}  // namespace etlab
