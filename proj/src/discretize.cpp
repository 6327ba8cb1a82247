#include "etlab/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "etlab/error.hpp"
#include "etlab/extremal.hpp"
#include "etlab/parallel.hpp"

namespace etlab {

namespace {

QuadratureSpec cell_spec() {
  QuadratureSpec s;
  s.panels = 1;
  s.nodes_per_panel = 16;
  s.abs_tol = 1e-15;
  s.max_refinements = 50;
  return s;
}

// mass and first moment about a of the density part of rho on [a, b], 0 <= a < b <= 1
std::pair<double, double> cell_moments(const MixedMeasureT& rho, double a, double b) {
  std::vector<double> cuts{a};
  for (double v : rho.breakpoints())
    for (double w : {v, v + 1.0})
      if (w > a && w < b) cuts.push_back(w);
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(b);
  QuadratureSpec sp = cell_spec();
  CompensatedSum mass, mom;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double p = cuts[i], q = cuts[i + 1];
    bool kink = i > 0 || i + 2 < cuts.size() ||
                std::binary_search(rho.breakpoints().begin(), rho.breakpoints().end(), wrap(p)) ||
                std::binary_search(rho.breakpoints().begin(), rho.breakpoints().end(), wrap(q));
    auto f0 = [&](double x) { return rho.density(x); };
    auto f1 = [&](double x) { return (x - a) * rho.density(x); };
    if (kink) {
      mass.add(integrate_endpoint_singular(f0, p, q, sp));
      mom.add(integrate_endpoint_singular(f1, p, q, sp));
    } else {
      mass.add(integrate_smooth(f0, p, q, sp));
      mom.add(integrate_smooth(f1, p, q, sp));
    }
  }
  return {mass.value(), mom.value()};
}

}  // namespace

std::pair<double, double> moment_match_moments(double mass, double moment, double a, double b) {
  if (!(b > a)) throw Error(Errc::DegenerateInterval, "moment matching needs b > a");
  double m2 = moment / (b - a);
  double m1 = mass - m2;
  const double tol = 1e-12 * (1.0 + std::abs(mass));
  if (m1 < -tol || m2 < -tol) throw Error(Errc::NegativeDensity, "moment matching produced a negative mass");
  // rounding-level negatives are folded into the other endpoint, keeping the mass exact
  if (m1 < 0) return {0.0, mass};
  if (m2 < 0) return {mass, 0.0};
  return {m1, m2};
}

std::pair<double, double> moment_match_cell(const Integrand& rho, double a, double b) {
  if (!(b > a)) throw Error(Errc::DegenerateInterval, "moment matching needs b > a");
  QuadratureSpec sp = cell_spec();
  double mass = integrate_smooth(rho, a, b, sp);
  double mom = integrate_smooth([&](double x) { return (x - a) * rho(x); }, a, b, sp);
  return moment_match_moments(mass, mom, a, b);
}

EmpiricalMeasure discretize_measure(const MixedMeasureT& rho, int n) {
  if (n < 1) throw Error(Errc::DomainError, "n must be positive");
  std::vector<std::pair<double, double>> cells(n);
  parallel_for(n, [&](size_t j) {
    double a = static_cast<double>(j) / n, b = static_cast<double>(j + 1) / n;
    auto [mass, mom] = cell_moments(rho, a, b);
    cells[j] = moment_match_moments(mass, mom, a, b);
  });
  std::vector<Atom> atoms;
  for (int j = 0; j < n; ++j) {
    double w = cells[j].first + cells[(j + n - 1) % n].second;
    if (w > 0) atoms.push_back({static_cast<double>(j) / n, w});
  }
  for (const auto& d : rho.diracs()) atoms.push_back(d);
  return EmpiricalMeasure(std::move(atoms), 1e-14);
}

EmpiricalMeasure rationalize(const EmpiricalMeasure& rho, int q, Apportion mode) {
  const auto& at = rho.atoms();
  if (q < static_cast<int>(at.size())) throw Error(Errc::QTooSmall, "q must be at least the number of atoms");
  if (!(rho.total() > 0)) throw Error(Errc::EmptyMeasure, "cannot rationalize an empty measure");
  const size_t k = at.size();
  std::vector<long> p(k, 0);
  if (mode == Apportion::LargestRemainder) {
    std::vector<double> rem(k);
    long used = 0;
    for (size_t j = 0; j < k; ++j) {
      double x = at[j].weight / rho.total() * q;
      p[j] = static_cast<long>(std::floor(x));
      rem[j] = x - p[j];
      used += p[j];
    }
    std::vector<size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t l, size_t r) { return rem[l] > rem[r]; });
    for (long i = 0; used < q; ++i, ++used) ++p[idx[i % k]];
  } else {
    // running rounding of the cumulative weights
    double c = 0.0;
    long prev = 0;
    for (size_t j = 0; j < k; ++j) {
      c += at[j].weight / rho.total();
      long cur = j + 1 == k ? q : std::lround(c * q);
      p[j] = std::max(0L, cur - prev);
      prev += p[j];
    }
  }
  std::vector<Atom> out;
  for (size_t j = 0; j < k; ++j)
    if (p[j] > 0) out.push_back({at[j].angle, static_cast<double>(p[j]) / q});
  return EmpiricalMeasure(std::move(out));
}

namespace {

StageStats stats(const EmpiricalMeasure& r, int grid) {
  double D = discrepancy_empirical(r).value;
  double H = height_T(r, grid).value;
  return {D, H, g_ratio(H, D)};
}

}  // namespace

SharpnessReport sharpness_pipeline(double m, int n, int q, bool synthesize, Apportion mode) {
  if (!(m > 0 && m <= 0.5)) throw Error(Errc::DomainError, "sharpness_pipeline needs 0 < m <= 1/2");
  SharpnessReport rep{m, n, q, {}, {}, {}, std::nullopt};
  auto rho = rho_type1(m);
  double D0 = discrepancy_mixed(rho).value, H0 = height_T(rho).value;
  rep.continuum = {D0, H0, g_ratio(H0, D0)};
  // grid a multiple of n so the samples sit midway between nodes
  int grid = n * std::max(1, (256 + n - 1) / n);
  auto rn = discretize_measure(rho, n);
  rep.discrete = stats(rn, grid);
  auto rq = rationalize(rn, q, mode);
  rep.rational = stats(rq, grid);
  if (synthesize) rep.polynomial = check_et(synthesize_poly(rq, q));
  return rep;
}

}  // namespace etlab
