#pragma once

#include <array>
#include <optional>
#include <vector>

#include "etlab/kernels.hpp"
#include "etlab/measures.hpp"

namespace etlab {

QuadratureSpec phi_spec();

// pv int_L^R pi sqrt((R^2-x^2)(x^2-L^2))/(x^2-1) dx, equal to (W~ * mu)(0)
double phi(double L, double R, const QuadratureSpec& spec = phi_spec());

// sqrt(R^2-1) ln(R + sqrt(R^2-1)) - R ; phi(0,R) = pi times this
double rc_function(double R);

// root of rc_function on (1, 3), cached
double r_critical();

// L in (0,1) with phi(L, R) = 0, for 1 < R < R_c
double l_of_r(double R);

// R empty selects kind I
AdmissibleDistR make_admissible(std::optional<double> R, double lambda = 1.0);

// mu(x) including the -1 background, at scale lambda
double density_R(const AdmissibleDistR& mu, double x);
// (W~ * mu)(x) on the line at scale lambda
double potential_R(const AdmissibleDistR& mu, double x);

// independent quadrature routes used as cross-checks
// H~ = pi pv int_{L^2}^{R^2} sqrt((R^2-u)(u-L^2))/(u-1) du (kinds II/III); tildeH1 integral for kind I
double h_tilde_quadrature(const AdmissibleDistR& mu);
// D~ = -2 lambda int_1^inf (density part of mu), from the zero total mass
double d_tilde_mass_balance(const AdmissibleDistR& mu);

MixedMeasureT rho_type1(double m);
double rho_type2_mass(double M, double R, double L);
MixedMeasureT rho_type2(double M, double R, double L);

struct PeriodizeResult {
  MixedMeasureT measure;
  double L_circ;  // sign-change radii of the density part
  double R_circ;
  int J;
};
PeriodizeResult periodize(const AdmissibleDistR& mu);

struct Table1Row {
  int k;
  double R, L, H, D;
  std::optional<double> ratio;
};
// printed R_0..R_18; R_19 is r_critical()
const std::array<double, 19>& table1_grid();
std::vector<Table1Row> table1();

struct Lemma57Bounds {
  double h_lower;
  double d_upper;
};
Lemma57Bounds lemma57_bounds(double R, double L);

}  // namespace etlab
