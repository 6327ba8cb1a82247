#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "etlab/kernels.hpp"

namespace etlab {

struct IntervalT {
  double a = 0.0;       // canonical start
  double length = 0.0;  // in [0, 1)
};

struct Atom {
  double angle;
  double weight;
};

class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  // wraps angles, sorts, merges duplicates (|dtheta| <= merge_tol)
  explicit EmpiricalMeasure(std::vector<Atom> atoms, double merge_tol = 0.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total() const { return total_; }
  size_t size() const { return atoms_.size(); }
  double potential(double x) const;

 private:
  std::vector<Atom> atoms_;
  double total_ = 0.0;
};

// piecewise-constant cell density on [-1/2, 1/2); cell j = [-1/2 + j/n, -1/2 + (j+1)/n)
// diracs sit on grid nodes: node j is at -1/2 + j/n
struct GridDensity {
  int n_cells = 0;
  std::vector<double> values;
  std::vector<std::pair<int, double>> diracs;
  double total_mass = 0.0;

  double h() const { return 1.0 / n_cells; }
  double center(int j) const { return -0.5 + (j + 0.5) / n_cells; }
  double node(int j) const { return wrap(-0.5 + static_cast<double>(j) / n_cells); }
  double density_mass() const;
  double dirac_mass() const;
  void check(double tol = 1e-10) const;
};

enum class AdmissibleKind { I = 1, II = 2, III = 3 };

// Type I/II/III signed distribution on the line, composed with x/lambda
struct AdmissibleDistR {
  AdmissibleKind kind = AdmissibleKind::I;
  double lambda = 1.0;
  double R = 0.0;
  double L = 0.0;
  double m = 0.0;

  // mu_c at unit scale (no -1 background, no Diracs); 0 off the support
  double continuous_part(double z) const;
  // continuous_part(z) - 1 without cancellation at large |z|
  double excess(double z) const;
  // positive support breakpoints at unit scale
  std::vector<double> breakpoints() const;
  // expansion mu_c(z) - 1 = c2/z^2 + c4/z^4 + O(z^-6)
  double c2() const;
  double c4() const;
};

struct TypeIFamily {
  double m;
};
struct TypeIIFamily {
  double M, R, L;
};
struct PeriodizedFamily {
  AdmissibleDistR mu;
  int J = 0;  // explicit lattice terms |j| <= J
};
struct GridFamily {
  GridDensity grid;
};
// 1 + sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x), k = 1..K
struct TrigFamily {
  std::vector<double> a, b;
};

using DensityFamily = std::variant<TypeIFamily, TypeIIFamily, PeriodizedFamily, GridFamily, TrigFamily>;

class MixedMeasureT {
 public:
  MixedMeasureT(std::vector<Atom> diracs, DensityFamily family, bool even);

  const std::vector<Atom>& diracs() const { return diracs_; }
  const DensityFamily& family() const { return family_; }
  bool even() const { return even_; }
  std::string tag() const;

  double density(double x) const;
  // sorted canonical points where the density may be non-smooth
  const std::vector<double>& breakpoints() const { return breaks_; }
  // int_a^b of the density part, a <= b, b - a <= 1 (wraps)
  double integrate_density(double a, double b) const;
  double density_mass() const { return mass_; }
  double dirac_mass() const;
  double total_mass() const { return density_mass() + dirac_mass(); }
  // (W * rho)(x), +inf at a Dirac
  double potential(double x) const;

  static QuadratureSpec default_spec();

 private:
  double integrate_canonical(double a, double b) const;
  double potential_density(double x) const;

  std::vector<Atom> diracs_;
  DensityFamily family_;
  bool even_;
  std::vector<double> breaks_;
  QuadratureSpec spec_;
  double mass_ = 0.0;
};

// diracs at grid nodes plus the piecewise-constant density
MixedMeasureT grid_measure(const GridDensity& g);

// lattice sums over j != 0, x in [-1/2, 1/2]
double lattice_sum2(double x);  // sum 1/(x-j)^2
double lattice_sum4(double x);  // sum 1/(x-j)^4
// density of 1 + sum_j mu(x - j) at canonical x (continuous part)
double periodized_density(const PeriodizedFamily& f, double x);

struct DiscrepancyResult {
  double value;
  IntervalT witness;
};
struct HeightResult {
  double value;
  double argmin;
};

DiscrepancyResult discrepancy_empirical(const EmpiricalMeasure& rho);
DiscrepancyResult discrepancy_empirical_bruteforce(const EmpiricalMeasure& rho);
DiscrepancyResult discrepancy_mixed(const MixedMeasureT& rho);

HeightResult height_T(const MixedMeasureT& rho, int grid_n = 256);
HeightResult height_T(const EmpiricalMeasure& rho, int grid_n = 256);

double g_ratio(double H, double D, double alpha = 2.0);
double g_ratio(const MixedMeasureT& rho, double alpha = 2.0, int grid_n = 256);
double g_ratio(const EmpiricalMeasure& rho, double alpha = 2.0, int grid_n = 256);

double h_tilde(const AdmissibleDistR& mu, const QuadratureSpec& spec = {});
double d_tilde(const AdmissibleDistR& mu, const QuadratureSpec& spec = {});
double g_tilde(const AdmissibleDistR& mu, const QuadratureSpec& spec = {});

}  // namespace etlab
