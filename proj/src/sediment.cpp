#include "etlab/sediment.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>

#include "etlab/error.hpp"

namespace etlab {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// r2c / c2r pair for one size; FFTW planning is not thread-safe, execution is
class Spectral {
 public:
  explicit Spectral(int n) : n_(n) {
    real_ = fftw_alloc_real(n);
    freq_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lk(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(n, real_, freq_, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(n, freq_, real_, FFTW_ESTIMATE);
  }
  ~Spectral() {
    std::lock_guard<std::mutex> lk(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(real_);
    fftw_free(freq_);
  }
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  // out_j = sum_{k != 0} W^(k) c_k e^{2 pi i k j / n}, c_k = (1/n) sum_j v_j e^{-2 pi i k j / n}
  void potential(const std::vector<double>& v, std::vector<double>& out) {
    std::copy(v.begin(), v.end(), real_);
    fftw_execute(fwd_);
    freq_[0][0] = freq_[0][1] = 0.0;
    for (int k = 1; k <= n_ / 2; ++k) {
      double s = w_hat(k) / n_;
      freq_[k][0] *= s;
      freq_[k][1] *= s;
    }
    fftw_execute(bwd_);
    out.assign(real_, real_ + n_);
  }

 private:
  int n_;
  double* real_;
  fftw_complex* freq_;
  fftw_plan fwd_, bwd_;
};

int nearest_node(double x, int n) {
  long j = std::lround((wrap(x) + 0.5) * n);
  return static_cast<int>(((j % n) + n) % n);
}

double interaction(const std::vector<double>& v, const std::vector<double>& pot) {
  CompensatedSum s;
  for (size_t j = 0; j < v.size(); ++j) s.add(v[j] * pot[j]);
  return 0.5 * s.value() / v.size();
}

double external(const std::vector<double>& v, const std::vector<double>& U) {
  CompensatedSum s;
  for (size_t j = 0; j < v.size(); ++j) s.add(v[j] * U[j]);
  return s.value() / v.size();
}

}  // namespace

double w_hat(int k) { return k == 0 ? 0.0 : 0.5 / std::abs(k); }

std::vector<double> external_cell_averages(const ExternalPotentialSpec& U, int n) {
  if (!U.extra.empty() && static_cast<int>(U.extra.size()) != n)
    throw Error(Errc::InputError, "extra potential must have one sample per cell");
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double lo = -0.5 + static_cast<double>(j) / n, hi = -0.5 + static_cast<double>(j + 1) / n;
    double s = 0.0;
    if (U.m != 0.0)
      for (double c : {U.M, -U.M})
        s += U.m * (kernel_T_antiderivative(hi - c) - kernel_T_antiderivative(lo - c)) * n;
    if (!U.extra.empty()) s += U.extra[j];
    out[j] = s;
  }
  return out;
}

std::vector<double> spectral_potential(const std::vector<double>& values) {
  if (values.size() < 2) throw Error(Errc::DomainError, "need at least two cells");
  Spectral sp(static_cast<int>(values.size()));
  std::vector<double> out;
  sp.potential(values, out);
  return out;
}

double interaction_energy(const std::vector<double>& values) { return interaction(values, spectral_potential(values)); }

double energy(const GridDensity& rho, const ExternalPotentialSpec& U) {
  return interaction_energy(rho.values) + external(rho.values, external_cell_averages(U, rho.n_cells));
}

double grid_potential(const GridDensity& rho, double x) {
  const int n = rho.n_cells;
  CompensatedSum s;
  for (int j = 0; j < n; ++j) {
    double dv = rho.values[j] - rho.values[(j + n - 1) % n];
    if (dv != 0.0) s.add(dv * kernel_T_antiderivative(x - rho.node(j)));
  }
  for (const auto& [j, m] : rho.diracs) s.add(m * kernel_T(x - rho.node(j)));
  return s.value();
}

GridDensity micro_diffuse(const GridDensity& rho, double x0, double eps) {
  if (!(eps > 0 && eps < 0.5)) throw Error(Errc::DomainError, "micro_diffuse needs 0 < eps < 1/2");
  const int n = rho.n_cells;
  const double c = wrap(x0);
  long ia = std::lround((c - eps + 0.5) * n), ib = std::lround((c + eps + 0.5) * n);
  long cells = ib - ia;
  if (cells < 8 || cells >= n) throw Error(Errc::IntervalTooCoarse, "interval must span at least 8 cells");
  auto mod = [n](long j) { return static_cast<int>(((j % n) + n) % n); };
  GridDensity out = rho;
  CompensatedSum mass, mom;
  for (long j = ia; j < ib; ++j) {
    double v = out.values[mod(j)];
    mass.add(v / n);
    mom.add(v / n * (j - ia + 0.5) / n);
    out.values[mod(j)] = 0.0;
  }
  std::map<int, double> dir;
  for (const auto& [j, m] : out.diracs) dir[j] += m;
  for (long j = ia + 1; j < ib; ++j) {
    auto it = dir.find(mod(j));
    if (it == dir.end()) continue;
    mass.add(it->second);
    mom.add(it->second * (j - ia) / static_cast<double>(n));
    dir.erase(it);
  }
  double L = static_cast<double>(cells) / n;
  double m2 = mom.value() / L, m1 = mass.value() - m2;
  if (m1 > 0) dir[mod(ia)] += m1;
  if (m2 > 0) dir[mod(ib)] += m2;
  out.diracs.assign(dir.begin(), dir.end());
  return out;
}

double sediment_residual(const std::vector<double>& V, const std::vector<double>& values, double mass) {
  double vmin = *std::min_element(V.begin(), V.end());
  double r = 0.0;
  for (size_t j = 0; j < V.size(); ++j)
    if (values[j] > 1e-6 * mass) r = std::max(r, V[j] - vmin);
  return r;
}

SedimentResult minimize_energy(const ExternalPotentialSpec& U, double mass, int n, const MinimizeOptions& opt) {
  if (!(mass > 0)) throw Error(Errc::DomainError, "mass must be positive");
  if (n < 8 || (n & (n - 1)) != 0) throw Error(Errc::DomainError, "n_cells must be a power of two >= 8");
  if (!(opt.step > 0) || opt.iters < 0) throw Error(Errc::DomainError, "bad minimizer options");
  Spectral sp(n);
  const std::vector<double> Ubar = external_cell_averages(U, n);
  std::vector<double> v(n, mass), pot, V(n), trial(n), tpot;

  auto total = [&](const std::vector<double>& x, const std::vector<double>& p) {
    return interaction(x, p) + external(x, Ubar);
  };
  sp.potential(v, pot);
  double E = total(v, pot);
  for (int j = 0; j < n; ++j) V[j] = Ubar[j] + pot[j];
  double vmax = 0.0;
  for (double x : V) vmax = std::max(vmax, std::abs(x));
  double eta = opt.step / std::max(vmax, 1e-300);

  SedimentResult res;
  res.trace.push_back({0, E, sediment_residual(V, v, mass)});
  long it = 0;
  double resid = res.trace.back().residual;
  while (it < opt.iters && resid > opt.tol) {
    double vmin = *std::min_element(V.begin(), V.end());
    bool accepted = false;
    for (int tries = 0; tries < 60 && !accepted; ++tries) {
      CompensatedSum s;
      for (int j = 0; j < n; ++j) {
        trial[j] = v[j] * std::exp(-eta * (V[j] - vmin));
        s.add(trial[j]);
      }
      double scale = mass * n / s.value();
      for (double& x : trial) x *= scale;
      sp.potential(trial, tpot);
      double Et = total(trial, tpot);
      if (Et <= E) {
        v.swap(trial);
        pot.swap(tpot);
        E = Et;
        accepted = true;
      } else {
        eta *= 0.5;
      }
    }
    if (!accepted) break;  // no descent at rounding level
    eta *= opt.growth;
    ++it;
    for (int j = 0; j < n; ++j) V[j] = Ubar[j] + pot[j];
    resid = sediment_residual(V, v, mass);
    if (opt.trace_every > 0 && it % opt.trace_every == 0) res.trace.push_back({it, E, resid});
  }
  if (res.trace.back().iteration != it) res.trace.push_back({it, E, resid});

  GridDensity g;
  g.n_cells = n;
  g.values = v;
  std::map<int, double> dir;
  if (U.m > 0) {
    dir[nearest_node(U.M, n)] += U.m;
    dir[nearest_node(-U.M, n)] += U.m;
  }
  g.diracs.assign(dir.begin(), dir.end());
  g.total_mass = mass + 2.0 * U.m;
  res.density = std::move(g);
  res.residual = resid;
  res.energy = E;
  res.iterations = it;
  res.converged = resid <= opt.tol;
  return res;
}

SedimentResult run_scenario(const Scenario& s) {
  MinimizeOptions o;
  o.iters = s.iters;
  o.tol = s.tol;
  return minimize_energy({s.M, s.m, {}}, s.mass, s.n_cells, o);
}

}  // namespace etlab
