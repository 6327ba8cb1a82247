#pragma once

#include <functional>
#include <string>
#include <vector>

#include "etlab/measures.hpp"

namespace etlab {

// U = W * (m (delta_M + delta_{-M})) plus an optional term sampled at cell centres
struct ExternalPotentialSpec {
  double M = 0.0;
  double m = 0.0;
  std::vector<double> extra;
};

// W^(k) = 1/(2|k|), k != 0
double w_hat(int k);

// cell averages of U on an n-cell grid (exact, via the antiderivative of W)
std::vector<double> external_cell_averages(const ExternalPotentialSpec& U, int n_cells);

// W * rho at cell centres for the band-limited interpolant of the cell values (diracs excluded)
std::vector<double> spectral_potential(const std::vector<double>& values);

// 1/2 sum_{k != 0} W^(k) |c_k|^2 + sum_j U_j v_j / n; diracs of rho are not included
double energy(const GridDensity& rho, const ExternalPotentialSpec& U);
double interaction_energy(const std::vector<double>& values);

// exact potential of the piecewise-constant density plus its diracs
double grid_potential(const GridDensity& rho, double x);

// replace the density on [x0 - eps, x0 + eps], snapped to grid nodes, by two endpoint diracs
// with the same mass and first moment; diracs strictly inside are moved as well
GridDensity micro_diffuse(const GridDensity& rho, double x0, double eps);

struct TracePoint {
  long iteration;
  double energy;
  double residual;
};

struct SedimentResult {
  GridDensity density;
  double residual;
  double energy;
  long iterations;
  bool converged;
  std::vector<TracePoint> trace;
};

struct MinimizeOptions {
  long iters = 50000;
  double step = 0.5;  // initial step is step / max|V|
  double tol = 1e-6;  // residual target; iteration stops once reached
  double growth = 1.05;
  long trace_every = 100;
};

// mirror descent on cell masses; the external diracs are frozen at the nodes nearest to +-M
SedimentResult minimize_energy(const ExternalPotentialSpec& U, double mass, int n_cells,
                               const MinimizeOptions& opt = {});

// max over support cells (density > 1e-6 mass) of V - min V
double sediment_residual(const std::vector<double>& V, const std::vector<double>& values, double mass);

struct Scenario {
  double M = 0.0;
  double m = 0.0;
  double mass = 1.0;
  int n_cells = 512;
  long iters = 50000;
  double tol = 1e-6;
};

SedimentResult run_scenario(const Scenario& s);

}  // namespace etlab
