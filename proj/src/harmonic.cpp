#include "etlab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "etlab/error.hpp"
#include "etlab/parallel.hpp"
#include "etlab/sediment.hpp"

namespace etlab {

namespace {
constexpr double kPi = std::numbers::pi;

QuadratureSpec moll_spec() {
  QuadratureSpec s;
  s.panels = 1;
  s.nodes_per_panel = 16;
  s.abs_tol = 1e-13;
  s.max_refinements = 50;
  return s;
}
}  // namespace

double mollifier(double x, double a) { return std::max(1.0 - std::abs(x) / a, 0.0) / a; }

std::vector<double> mollify(const MixedMeasureT& rho, int grid_n, double a) {
  if (grid_n < 2) throw Error(Errc::DomainError, "grid_n must be >= 2");
  if (a == 0.0) a = 2.0 / grid_n;
  if (!(a > 0 && a <= 0.5)) throw Error(Errc::DomainError, "mollifier width must be in (0, 1/2]");
  std::vector<double> out(grid_n);
  const auto& br = rho.breakpoints();
  parallel_for(grid_n, [&](size_t j) {
    double x = static_cast<double>(j) / grid_n;
    CompensatedSum s;
    for (const auto& d : rho.diracs()) s.add(d.weight * mollifier(wrap(x - d.angle), a));
    // int rho_c(x - y) psi_a(y) dy over [-a, a], cut at 0 and at the density breakpoints
    std::vector<double> cuts{-a, 0.0, a};
    for (double b : br)
      for (int k = -1; k <= 1; ++k) {
        double y = x - b + k;
        if (y > -a && y < a) cuts.push_back(y);
      }
    std::sort(cuts.begin(), cuts.end());
    auto f = [&](double y) { return rho.density(x - y) * mollifier(y, a); };
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] > cuts[i]) s.add(integrate_endpoint_singular(f, cuts[i], cuts[i + 1], moll_spec()));
    out[j] = s.value();
  });
  return out;
}

std::vector<double> smooth_samples(const MixedMeasureT& rho, int grid_n) {
  bool smooth = rho.diracs().empty() && std::holds_alternative<TrigFamily>(rho.family());
  if (!smooth) return mollify(rho, grid_n);
  std::vector<double> out(grid_n);
  for (int j = 0; j < grid_n; ++j) out[j] = rho.density(static_cast<double>(j) / grid_n);
  return out;
}

ConjugatePair conjugate_pair(const std::vector<double>& rho, int grid_n) {
  if (static_cast<int>(rho.size()) != grid_n || grid_n < 8)
    throw Error(Errc::DomainError, "need grid_n >= 8 samples");
  CompensatedSum mean;
  for (double x : rho) {
    if (x < -1e-12) throw Error(Errc::NegativeDensity, "density samples must be nonnegative");
    mean.add(x);
  }
  if (std::abs(mean.value() / grid_n - 1.0) > 1e-6) throw Error(Errc::DomainError, "density must have mean 1");
  const double h = 1.0 / grid_n;
  ConjugatePair p;
  p.v.resize(grid_n);
  p.v[0] = 0.0;
  for (int j = 1; j < grid_n; ++j) p.v[j] = p.v[j - 1] + 0.5 * h * ((1.0 - rho[j - 1]) + (1.0 - rho[j]));
  CompensatedSum vm;
  for (double x : p.v) vm.add(x);
  double c = vm.value() / grid_n;
  for (double& x : p.v) x -= c;
  p.u = spectral_potential(rho);
  for (double& x : p.u) x *= -1.0 / kPi;
  return p;
}

GaneliusReport ganelius_check(const std::vector<double>& rho) {
  auto p = conjugate_pair(rho, static_cast<int>(rho.size()));
  double H = *std::max_element(p.u.begin(), p.u.end());
  double K = 0.0;
  for (double x : rho) K = std::max(K, 1.0 - x);
  if (!(H > 1e-14)) throw Error(Errc::HNonpositive, "max u must be positive");
  if (!(K > 1e-14)) throw Error(Errc::KNonpositive, "max (1 - rho) must be positive");
  auto [lo, hi] = std::minmax_element(p.v.begin(), p.v.end());
  double osc = *hi - *lo;
  double bound = std::sqrt(2.0 * kPi) * std::sqrt(H * K);
  return {H, K, osc, bound, osc <= bound + 1e-9, osc / bound};
}

}  // namespace etlab
