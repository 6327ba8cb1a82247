#pragma once

#include <functional>
#include <vector>

namespace etlab {

using Integrand = std::function<double(double)>;

struct QuadratureSpec {
  int panels = 4;
  int nodes_per_panel = 32;
  double abs_tol = 1e-8;
  int max_refinements = 40;

  void validate() const;
};

// canonical representative of x mod 1 in [-1/2, 1/2)
double wrap(double x);

// W(x) = -log|2 sin(pi x)| on the circle, +inf at integers
double kernel_T(double x);
// W~(x) = -log|x| on the line
double kernel_R(double x);

// Cl_2(theta) = sum_k sin(k theta)/k^2
double clausen2(double theta);
// int_0^x W(t) dt = Cl_2(2 pi x)/(2 pi)
double kernel_T_antiderivative(double x);

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

// Neumaier compensated sum, fixed order
struct CompensatedSum {
  double s = 0.0, c = 0.0;
  void add(double v);
  double value() const { return s + c; }
};

// plain adaptive Gauss-Legendre for smooth integrands
double integrate_smooth(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

// integrable singularities (log, sqrt, ...) at either endpoint; graded panels toward both ends
double integrate_endpoint_singular(const Integrand& f, double a, double b,
                                   const QuadratureSpec& spec = {});

double integrate_log_singular(const Integrand& f, double a, double b, double s,
                              const QuadratureSpec& spec = {});

double pv_integrate(const Integrand& f, double a, double b, double p,
                    const QuadratureSpec& spec = {});

double integrate_sqrt_endpoints(const Integrand& f, double a, double b,
                                const QuadratureSpec& spec = {});

// pv int_a^b g(x)/(x - p) dx for g with square-root endpoint behaviour; pole subtracted
double pv_integrate_sqrt_endpoints(const Integrand& g, double a, double b, double p,
                                   const QuadratureSpec& spec = {});

}  // namespace etlab
