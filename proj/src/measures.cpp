#include "etlab/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "detail.hpp"
#include "etlab/error.hpp"
#include "etlab/parallel.hpp"

namespace etlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const std::array<double, 64>& zeta_table() {
  static const std::array<double, 64> z = [] {
    std::array<double, 64> t{};
    for (int s = 2; s < 64; ++s) t[s] = std::riemann_zeta(static_cast<double>(s));
    return t;
  }();
  return z;
}

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms, double merge_tol) {
  for (auto& a : atoms) a.angle = wrap(a.angle);
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.angle < r.angle; });
  std::vector<Atom> out;
  for (const auto& a : atoms) {
    if (!out.empty() && a.angle - out.back().angle <= merge_tol)
      out.back().weight += a.weight;
    else
      out.push_back(a);
  }
  if (out.size() > 1 && out.back().angle - out.front().angle >= 1.0 - merge_tol) {
    out.front().weight += out.back().weight;
    out.pop_back();
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- empirical

EmpiricalMeasure::EmpiricalMeasure(std::vector<Atom> atoms, double merge_tol) {
  for (const auto& a : atoms) {
    if (!(a.weight > 0) || !std::isfinite(a.angle))
      throw Error(Errc::DomainError, "atom weights must be positive and angles finite");
  }
  atoms_ = normalize_atoms(std::move(atoms), merge_tol);
  CompensatedSum s;
  for (const auto& a : atoms_) s.add(a.weight);
  total_ = s.value();
}

double EmpiricalMeasure::potential(double x) const {
  CompensatedSum s;
  for (const auto& a : atoms_) {
    double k = kernel_T(x - a.angle);
    if (std::isinf(k)) return kInf;
    s.add(a.weight * k);
  }
  return s.value();
}

// ---------------------------------------------------------------- grid

double GridDensity::density_mass() const {
  CompensatedSum s;
  for (double v : values) s.add(v);
  return s.value() / n_cells;
}

double GridDensity::dirac_mass() const {
  double s = 0.0;
  for (const auto& d : diracs) s += d.second;
  return s;
}

void GridDensity::check(double tol) const {
  if (n_cells < 1 || (n_cells & (n_cells - 1)) != 0)
    throw Error(Errc::DomainError, "n_cells must be a power of two");
  if (static_cast<int>(values.size()) != n_cells) throw Error(Errc::DomainError, "values size mismatch");
  for (double v : values)
    if (!(v >= 0)) throw Error(Errc::NegativeDensity, "grid density must be nonnegative");
  for (const auto& d : diracs)
    if (d.first < 0 || d.first >= n_cells || !(d.second > 0))
      throw Error(Errc::DomainError, "bad grid dirac");
  if (std::abs(density_mass() + dirac_mass() - total_mass) > tol)
    throw Error(Errc::DomainError, "grid mass does not match total_mass");
}

// ---------------------------------------------------------------- admissible

double AdmissibleDistR::continuous_part(double z) const {
  double a = std::abs(z);
  switch (kind) {
    case AdmissibleKind::I: {
      double c = 1.0 / kPi;
      return a >= c ? std::sqrt((a - c) * (a + c)) / a : 0.0;
    }
    case AdmissibleKind::II:
      return a >= R ? a * std::sqrt((a - R) * (a + R)) / (a * a - 1.0) : 0.0;
    case AdmissibleKind::III:
      if (a >= R || a <= L) return std::sqrt((a * a - R * R) * (a * a - L * L)) / std::abs(a * a - 1.0);
      return 0.0;
  }
  return 0.0;
}

double AdmissibleDistR::excess(double z) const {
  double a = std::abs(z);
  if (kind == AdmissibleKind::I) {
    double c = 1.0 / kPi;
    if (a < c) return -1.0;
    return -c * c / (a * (std::sqrt((a - c) * (a + c)) + a));
  }
  double A = R * R, B = L * L, a2 = a * a;
  if (a < R && (kind == AdmissibleKind::II || a > L)) return -1.0;
  double P = (a2 - A) * (a2 - B), den = std::abs(a2 - 1.0);
  return ((2.0 - A - B) * a2 + A * B - 1.0) / (den * (std::sqrt(P) + den));
}

std::vector<double> AdmissibleDistR::breakpoints() const {
  switch (kind) {
    case AdmissibleKind::I: return {1.0 / kPi};
    case AdmissibleKind::II: return {R};
    case AdmissibleKind::III: return L > 0 ? std::vector<double>{L, R} : std::vector<double>{R};
  }
  return {};
}

double AdmissibleDistR::c2() const {
  if (kind == AdmissibleKind::I) return -0.5 / (kPi * kPi);
  double A = R * R, B = L * L;
  return 1.0 - 0.5 * (A + B);
}

double AdmissibleDistR::c4() const {
  if (kind == AdmissibleKind::I) return -0.125 / (kPi * kPi * kPi * kPi);
  double A = R * R, B = L * L;
  return 1.0 - 0.5 * (A + B) - 0.125 * (A - B) * (A - B);
}

// ---------------------------------------------------------------- lattice sums

double lattice_sum2(double x) {
  if (std::abs(x) > 0.1) {
    double s = std::sin(kPi * x);
    return kPi * kPi / (s * s) - 1.0 / (x * x);
  }
  const auto& z = zeta_table();
  double x2 = x * x, pw = 1.0, out = 0.0;
  for (int k = 0; k + 2 < 64; k += 2) {
    double t = (k + 1.0) * z[k + 2] * pw;
    out += t;
    if (t < 1e-18) break;
    pw *= x2;
  }
  return 2.0 * out;
}

double lattice_sum4(double x) {
  if (std::abs(x) > 0.1) {
    double s = std::sin(kPi * x);
    double c2 = 1.0 / (s * s);
    double p4 = kPi * kPi * kPi * kPi;
    return p4 * (c2 * c2 - (2.0 / 3.0) * c2) - 1.0 / (x * x * x * x);
  }
  const auto& z = zeta_table();
  double x2 = x * x, pw = 1.0, out = 0.0;
  for (int k = 0; k + 4 < 64; k += 2) {
    double binom = (k + 3.0) * (k + 2.0) * (k + 1.0) / 6.0;
    double t = binom * z[k + 4] * pw;
    out += t;
    if (t < 1e-18) break;
    pw *= x2;
  }
  return 2.0 * out;
}

double periodized_density(const PeriodizedFamily& f, double x) {
  const auto& mu = f.mu;
  double lam = mu.lambda;
  double a2 = mu.c2() * lam * lam;
  double a4 = mu.c4() * lam * lam * lam * lam;
  auto g = [&](double y) { return mu.excess(y / lam); };
  CompensatedSum s;
  s.add(1.0);
  s.add(g(x));
  s.add(a2 * lattice_sum2(x));
  s.add(a4 * lattice_sum4(x));
  for (int j = f.J; j >= 1; --j) {
    double ym = x - j, yp = x + j;
    double ym2 = 1.0 / (ym * ym), yp2 = 1.0 / (yp * yp);
    s.add(g(ym) - a2 * ym2 - a4 * ym2 * ym2);
    s.add(g(yp) - a2 * yp2 - a4 * yp2 * yp2);
  }
  return s.value();
}

// ---------------------------------------------------------------- mixed

QuadratureSpec MixedMeasureT::default_spec() {
  QuadratureSpec s;
  s.panels = 1;
  s.nodes_per_panel = 32;
  s.abs_tol = 1e-11;
  s.max_refinements = 50;
  return s;
}

MixedMeasureT::MixedMeasureT(std::vector<Atom> diracs, DensityFamily family, bool even)
    : family_(std::move(family)), even_(even), spec_(default_spec()) {
  for (const auto& d : diracs)
    if (!(d.weight > 0)) throw Error(Errc::DomainError, "dirac masses must be positive");
  diracs_ = normalize_atoms(std::move(diracs), 1e-14);

  std::vector<double> b;
  auto add_sym = [&](double v) {
    b.push_back(wrap(v));
    b.push_back(wrap(-v));
  };
  std::visit(overloaded{
                 [&](const TypeIFamily& f) {
                   if (f.m < 0.5) add_sym(std::asin(2.0 * f.m) / kPi);
                 },
                 [&](const TypeIIFamily& f) {
                   if (f.L > 0) add_sym(f.L);
                   add_sym(f.R);
                 },
                 [&](const PeriodizedFamily& f) {
                   for (double u : f.mu.breakpoints()) {
                     double v = f.mu.lambda * u;
                     for (int j = -(f.J + 2); j <= f.J + 2; ++j) {
                       for (double w : {v + j, -v + j})
                         if (w >= -0.5 && w < 0.5) b.push_back(w);
                     }
                   }
                 },
                 [&](const GridFamily& f) { f.grid.check(); },
                 [&](const TrigFamily&) {},
             },
             family_);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  breaks_ = std::move(b);
  mass_ = integrate_canonical(-0.5, 0.5);
}

std::string MixedMeasureT::tag() const {
  return std::visit(overloaded{
                        [](const TypeIFamily&) { return std::string("TypeI_T"); },
                        [](const TypeIIFamily&) { return std::string("TypeII_T"); },
                        [](const PeriodizedFamily&) { return std::string("Periodized"); },
                        [](const GridFamily&) { return std::string("GridBacked"); },
                        [](const TrigFamily&) { return std::string("UniformPlus"); },
                    },
                    family_);
}

double MixedMeasureT::density(double x) const {
  double t = wrap(x);
  return std::visit(overloaded{
                        [&](const TypeIFamily& f) {
                          double s = std::sin(kPi * t);
                          double x0 = std::asin(2.0 * f.m) / kPi;
                          if (std::abs(t) < x0 || s == 0.0) return 0.0;
                          return std::sqrt(std::max(0.0, 1.0 - 4.0 * f.m * f.m / (s * s)));
                        },
                        [&](const TypeIIFamily& f) {
                          double a = std::abs(t);
                          bool in = (f.L > 0 && a <= f.L) || a >= f.R;
                          if (!in) return 0.0;
                          auto sn = [](double v) { return std::sin(kPi * v); };
                          double num = std::abs(sn(t - f.R) * sn(t + f.R) * sn(t - f.L) * sn(t + f.L));
                          double den = std::abs(sn(t - f.M) * sn(t + f.M));
                          return std::sqrt(num) / den;
                        },
                        [&](const PeriodizedFamily& f) { return periodized_density(f, t); },
                        [&](const GridFamily& f) {
                          int j = static_cast<int>(std::floor((t + 0.5) * f.grid.n_cells));
                          j = std::clamp(j, 0, f.grid.n_cells - 1);
                          return f.grid.values[j];
                        },
                        [&](const TrigFamily& f) {
                          double v = 1.0;
                          for (size_t k = 0; k < f.a.size(); ++k) v += f.a[k] * std::cos(2 * kPi * (k + 1) * t);
                          for (size_t k = 0; k < f.b.size(); ++k) v += f.b[k] * std::sin(2 * kPi * (k + 1) * t);
                          return v;
                        },
                    },
                    family_);
}

double MixedMeasureT::dirac_mass() const {
  double s = 0.0;
  for (const auto& d : diracs_) s += d.weight;
  return s;
}

double MixedMeasureT::integrate_density(double a, double b) const {
  if (b < a) throw Error(Errc::DomainError, "integrate_density needs a <= b");
  if (b - a > 1.0 + 1e-15) throw Error(Errc::DomainError, "integrate_density over more than one turn");
  if (b == a) return 0.0;
  double a0 = wrap(a);
  double b0 = a0 + (b - a);
  if (b0 <= 0.5) return integrate_canonical(a0, b0);
  return integrate_canonical(a0, 0.5) + integrate_canonical(-0.5, std::min(0.5, b0 - 1.0));
}

double MixedMeasureT::integrate_canonical(double a, double b) const {
  if (b <= a) return 0.0;
  if (const auto* g = std::get_if<GridFamily>(&family_)) {
    const auto& gd = g->grid;
    int n = gd.n_cells;
    double h = 1.0 / n;
    int ja = std::clamp(static_cast<int>(std::floor((a + 0.5) * n)), 0, n - 1);
    int jb = std::clamp(static_cast<int>(std::floor((b + 0.5) * n)), 0, n - 1);
    CompensatedSum s;
    for (int j = ja; j <= jb; ++j) {
      double lo = std::max(a, -0.5 + j * h), hi = std::min(b, -0.5 + (j + 1) * h);
      if (hi > lo) s.add(gd.values[j] * (hi - lo));
    }
    return s.value();
  }
  if (const auto* t = std::get_if<TrigFamily>(&family_)) {
    CompensatedSum s;
    s.add(b - a);
    for (size_t k = 0; k < t->a.size(); ++k) {
      double w = 2 * kPi * (k + 1);
      s.add(t->a[k] * (std::sin(w * b) - std::sin(w * a)) / w);
    }
    for (size_t k = 0; k < t->b.size(); ++k) {
      double w = 2 * kPi * (k + 1);
      s.add(-t->b[k] * (std::cos(w * b) - std::cos(w * a)) / w);
    }
    return s.value();
  }
  std::vector<double> cuts{a};
  for (double v : breaks_)
    if (v > a && v < b) cuts.push_back(v);
  cuts.push_back(b);
  auto is_break = [&](double v) { return std::binary_search(breaks_.begin(), breaks_.end(), v); };
  auto f = [&](double y) { return density(y); };
  CompensatedSum s;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double p = cuts[i], q = cuts[i + 1];
    bool sl = is_break(p), sr = is_break(q);
    if (sl && sr)
      s.add(integrate_endpoint_singular(f, p, q, spec_));
    else if (sl)
      s.add(integrate_log_singular(f, p, q, p, spec_));
    else if (sr)
      s.add(integrate_log_singular(f, p, q, q, spec_));
    else
      s.add(integrate_smooth(f, p, q, spec_));
  }
  return s.value();
}

double MixedMeasureT::potential_density(double x) const {
  if (const auto* g = std::get_if<GridFamily>(&family_)) {
    // sum_j v_j (A(x - y_j) - A(x - y_{j+1})) = sum_j (v_j - v_{j-1}) A(x - y_j)
    const auto& gd = g->grid;
    int n = gd.n_cells;
    CompensatedSum s;
    for (int j = 0; j < n; ++j) {
      double dv = gd.values[j] - gd.values[(j + n - 1) % n];
      if (dv != 0.0) s.add(dv * kernel_T_antiderivative(x - (-0.5 + static_cast<double>(j) / n)));
    }
    return s.value();
  }
  if (const auto* t = std::get_if<TrigFamily>(&family_)) {
    double v = 0.0;
    for (size_t k = 0; k < t->a.size(); ++k) v += t->a[k] * std::cos(2 * kPi * (k + 1) * x) / (2.0 * (k + 1));
    for (size_t k = 0; k < t->b.size(); ++k) v += t->b[k] * std::sin(2 * kPi * (k + 1) * x) / (2.0 * (k + 1));
    return v;
  }
  double xc = wrap(x);
  std::vector<double> cuts{-0.5};
  for (double v : breaks_)
    if (v > -0.5) cuts.push_back(v);
  cuts.push_back(0.5);
  if (!std::binary_search(cuts.begin(), cuts.end(), xc)) {
    cuts.push_back(xc);
    std::sort(cuts.begin(), cuts.end());
  }
  auto is_sing = [&](double v) {
    return std::binary_search(breaks_.begin(), breaks_.end(), wrap(v)) || wrap(v - xc) == 0.0;
  };
  auto f = [&](double y) { return kernel_T(xc - y) * density(y); };
  CompensatedSum s;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double p = cuts[i], q = cuts[i + 1];
    if (q <= p) continue;
    bool sl = is_sing(p), sr = is_sing(q);
    if (sl && sr)
      s.add(integrate_endpoint_singular(f, p, q, spec_));
    else if (sl)
      s.add(integrate_log_singular(f, p, q, p, spec_));
    else if (sr)
      s.add(integrate_log_singular(f, p, q, q, spec_));
    else
      s.add(integrate_smooth(f, p, q, spec_));
  }
  return s.value();
}

double MixedMeasureT::potential(double x) const {
  CompensatedSum s;
  for (const auto& d : diracs_) {
    double k = kernel_T(x - d.angle);
    if (std::isinf(k)) return kInf;
    s.add(d.weight * k);
  }
  s.add(potential_density(x));
  return s.value();
}

MixedMeasureT grid_measure(const GridDensity& g) {
  std::vector<Atom> d;
  for (const auto& [j, m] : g.diracs)
    if (m > 0) d.push_back({g.node(j), m});
  return MixedMeasureT(std::move(d), GridFamily{g}, false);
}

// ---------------------------------------------------------------- discrepancy

DiscrepancyResult discrepancy_empirical(const EmpiricalMeasure& rho) {
  const auto& at = rho.atoms();
  size_t n = at.size();
  if (n == 0) throw Error(Errc::EmptyMeasure, "discrepancy of empty measure");
  // arc i..j over the doubled sequence: (P[j+1] - pos[j]) - (P[i] - pos[i])
  std::vector<double> pos(2 * n), P(2 * n + 1, 0.0);
  for (size_t k = 0; k < 2 * n; ++k) {
    pos[k] = at[k % n].angle + (k >= n ? 1.0 : 0.0);
    P[k + 1] = P[k] + at[k % n].weight;
  }
  auto B = [&](size_t i) { return P[i] - pos[i]; };
  std::deque<size_t> dq;
  double best = -kInf;
  size_t bi = 0, bj = 0;
  for (size_t j = 0; j < 2 * n; ++j) {
    if (j < n) {
      while (!dq.empty() && B(dq.back()) >= B(j)) dq.pop_back();
      dq.push_back(j);
    }
    while (!dq.empty() && dq.front() + n <= j) dq.pop_front();
    if (dq.empty()) continue;
    size_t i = dq.front();
    double v = (P[j + 1] - pos[j]) - B(i);
    if (v > best) {
      best = v;
      bi = i;
      bj = j;
    }
  }
  return {best, IntervalT{at[bi].angle, pos[bj] - pos[bi]}};
}

DiscrepancyResult discrepancy_empirical_bruteforce(const EmpiricalMeasure& rho) {
  const auto& at = rho.atoms();
  size_t n = at.size();
  if (n == 0) throw Error(Errc::EmptyMeasure, "discrepancy of empty measure");
  double best = -kInf;
  IntervalT w;
  for (size_t i = 0; i < n; ++i) {
    double mass = 0.0;
    for (size_t k = 0; k < n; ++k) {
      size_t j = (i + k) % n;
      mass += at[j].weight;
      double len = at[j].angle - at[i].angle;
      if (len < 0) len += 1.0;
      double v = mass - len;
      if (v > best) {
        best = v;
        w = IntervalT{at[i].angle, len};
      }
    }
  }
  return {best, w};
}

namespace {

// max over arcs of consecutive elements (value, start, end) around the circle, total length < 1
DiscrepancyResult circular_scan(const std::vector<std::array<double, 3>>& el) {
  size_t K = el.size();
  std::vector<double> P(2 * K + 1, 0.0), st(2 * K), en(2 * K);
  for (size_t k = 0; k < 2 * K; ++k) {
    double sh = k >= K ? 1.0 : 0.0;
    P[k + 1] = P[k] + el[k % K][0];
    st[k] = el[k % K][1] + sh;
    en[k] = el[k % K][2] + sh;
  }
  std::deque<size_t> dq;
  double best = -kInf;
  size_t bi = 0, bj = 0;
  size_t lo = 0;
  for (size_t j = 0; j < 2 * K; ++j) {
    if (j < K) {
      while (!dq.empty() && P[dq.back()] >= P[j]) dq.pop_back();
      dq.push_back(j);
    }
    while (lo <= j && en[j] - st[lo] >= 1.0 - 1e-14) ++lo;
    while (!dq.empty() && dq.front() < lo) dq.pop_front();
    if (dq.empty()) continue;
    double v = P[j + 1] - P[dq.front()];
    if (v > best) {
      best = v;
      bi = dq.front();
      bj = j;
    }
  }
  return {best, IntervalT{wrap(st[bi]), en[bj] - st[bi]}};
}

DiscrepancyResult discrepancy_generic(const MixedMeasureT& rho) {
  int n = 4096;
  if (const auto* g = std::get_if<GridFamily>(&rho.family())) n = std::max(n, g->grid.n_cells);
  double h = 1.0 / n;
  std::vector<std::array<double, 3>> el;
  const auto& dd = rho.diracs();
  size_t di = 0;
  for (int k = 0; k < n; ++k) {
    double lo = -0.5 + k * h, hi = -0.5 + (k + 1) * h;
    while (di < dd.size() && dd[di].angle <= lo + 1e-15) {
      el.push_back({dd[di].weight, dd[di].angle, dd[di].angle});
      ++di;
    }
    // diracs strictly inside a cell split it
    double cur = lo;
    while (di < dd.size() && dd[di].angle < hi - 1e-15) {
      double a = dd[di].angle;
      el.push_back({rho.integrate_density(cur, a) - (a - cur), cur, a});
      el.push_back({dd[di].weight, a, a});
      cur = a;
      ++di;
    }
    el.push_back({rho.integrate_density(cur, hi) - (hi - cur), cur, hi});
  }
  return circular_scan(el);
}

}  // namespace

DiscrepancyResult discrepancy_mixed(const MixedMeasureT& rho) {
  if (const auto* t1 = std::get_if<TypeIFamily>(&rho.family()))
    return {2.0 * t1->m, IntervalT{0.0, 0.0}};
  if (!rho.even()) {
    if (std::holds_alternative<GridFamily>(rho.family())) return discrepancy_generic(rho);
    throw Error(Errc::NotEven, "discrepancy_mixed needs an even measure");
  }
  // symmetric arcs around 0 and around 1/2: F(a) = mass([c-a, c+a]) - 2a
  const int N = 2048;
  const double h = 0.5 / N;
  std::vector<double> cell(N);
  parallel_for(N, [&](size_t i) { cell[i] = rho.integrate_density(i * h, (i + 1) * h); });
  std::vector<double> C(N + 1, 0.0);  // C[i] = int_0^{i h} density
  for (int i = 0; i < N; ++i) C[i + 1] = C[i] + cell[i];
  double half = C[N];

  auto cum = [&](double a) {
    int i = std::clamp(static_cast<int>(std::floor(a / h)), 0, N - 1);
    return C[i] + rho.integrate_density(i * h, a);
  };
  auto dmass0 = [&](double a) {
    double s = 0.0;
    for (const auto& d : rho.diracs())
      if (std::abs(d.angle) <= a + 1e-15) s += d.weight;
    return s;
  };
  auto dmass_half = [&](double a) {
    double s = 0.0;
    for (const auto& d : rho.diracs())
      if (0.5 - std::abs(d.angle) <= a + 1e-15) s += d.weight;
    return s;
  };
  auto F0 = [&](double a) { return 2.0 * cum(a) + dmass0(a) - 2.0 * a; };
  auto Fh = [&](double a) { return 2.0 * (half - cum(0.5 - a)) + dmass_half(a) - 2.0 * a; };

  double best = -kInf;
  int best_center = 0;
  double best_a = 0.0;
  auto consider = [&](double v, int c, double a) {
    if (v > best) {
      best = v;
      best_center = c;
      best_a = a;
    }
  };
  std::vector<double> g0(N + 1), gh(N + 1);
  for (int i = 0; i <= N; ++i) {
    double a = i * h;
    if (i == N) a = 0.5 - 1e-12;
    g0[i] = 2.0 * C[i] + dmass0(a) - 2.0 * a;
    gh[i] = 2.0 * (half - C[N - i]) + dmass_half(a) - 2.0 * a;
    consider(g0[i], 0, a);
    consider(gh[i], 1, a);
  }
  for (const auto& d : rho.diracs()) {
    double a = std::abs(d.angle);
    consider(F0(a), 0, a);
    consider(Fh(0.5 - a), 1, 0.5 - a);
  }
  // local refinement around the best grid point when no dirac sits in the bracket
  int ib = static_cast<int>(std::lround(best_a / h));
  double lo = std::max(0.0, (ib - 1) * h), hi = std::min(0.5 - 1e-12, (ib + 1) * h);
  bool dirac_inside = false;
  for (const auto& d : rho.diracs()) {
    double a = best_center == 0 ? std::abs(d.angle) : 0.5 - std::abs(d.angle);
    if (a >= lo - 1e-15 && a <= hi + 1e-15) dirac_inside = true;
  }
  if (!dirac_inside && hi > lo) {
    auto r = best_center == 0 ? detail::golden_max(F0, lo, hi, 1e-10) : detail::golden_max(Fh, lo, hi, 1e-10);
    consider(r.second, best_center, r.first);
  }
  IntervalT w = best_center == 0 ? IntervalT{wrap(-best_a), 2.0 * best_a}
                                 : IntervalT{wrap(0.5 - best_a), 2.0 * best_a};
  return {best, w};
}

// ---------------------------------------------------------------- height

namespace {

template <class Pot>
HeightResult height_from_grid(Pot&& pot, int grid_n, int refine_top) {
  if (grid_n < 256) throw Error(Errc::DomainError, "grid_n must be >= 256");
  std::vector<double> v(grid_n);
  const double h = 1.0 / grid_n;
  parallel_for(grid_n, [&](size_t i) { v[i] = pot(-0.5 + (i + 0.5) * h); });
  std::vector<int> idx(grid_n);
  for (int i = 0; i < grid_n; ++i) idx[i] = i;
  int top = std::min(refine_top, grid_n);
  std::partial_sort(idx.begin(), idx.begin() + top, idx.end(), [&](int l, int r) {
    return v[l] < v[r] || (v[l] == v[r] && l < r);
  });
  double best = v[idx[0]];
  double arg = -0.5 + (idx[0] + 0.5) * h;
  for (int t = 0; t < top; ++t) {
    double c = -0.5 + (idx[t] + 0.5) * h;
    auto r = detail::golden_min(pot, c - h, c + h, 1e-10);
    if (r.second < best) {
      best = r.second;
      arg = r.first;
    }
  }
  return {-best, wrap(arg)};
}

}  // namespace

HeightResult height_T(const MixedMeasureT& rho, int grid_n) {
  return height_from_grid([&](double x) { return rho.potential(x); }, grid_n, 3);
}

HeightResult height_T(const EmpiricalMeasure& rho, int grid_n) {
  return height_from_grid([&](double x) { return rho.potential(x); }, grid_n, 5);
}

double g_ratio(double H, double D, double alpha) {
  if (!(D > 0)) throw Error(Errc::ZeroDiscrepancy, "g_ratio needs D > 0");
  return H / std::pow(D, alpha);
}

double g_ratio(const MixedMeasureT& rho, double alpha, int grid_n) {
  double D = discrepancy_mixed(rho).value;
  return g_ratio(height_T(rho, grid_n).value, D, alpha);
}

double g_ratio(const EmpiricalMeasure& rho, double alpha, int grid_n) {
  double D = discrepancy_empirical(rho).value;
  return g_ratio(height_T(rho, grid_n).value, D, alpha);
}

// ---------------------------------------------------------------- line functionals

double h_tilde(const AdmissibleDistR& mu, const QuadratureSpec& spec) {
  double l2 = mu.lambda * mu.lambda;
  switch (mu.kind) {
    case AdmissibleKind::I: return l2 * 0.5;
    case AdmissibleKind::II: return l2 * 0.5 * kPi * kPi * (mu.R * mu.R - 2.0);
    case AdmissibleKind::III: {
      double R = mu.R, L = mu.L;
      double I = integrate_sqrt_endpoints(
          [&](double x) { return std::sqrt(std::max(0.0, (R * R - x * x) * (x * x - L * L))) / (x + 1.0); }, L, R,
          spec);
      return l2 * 2.0 * kPi * I;
    }
  }
  return 0.0;
}

double d_tilde(const AdmissibleDistR& mu, const QuadratureSpec& spec) {
  switch (mu.kind) {
    case AdmissibleKind::I: return mu.lambda;
    case AdmissibleKind::II: return mu.lambda * (kPi * std::sqrt(mu.R * mu.R - 1.0) - 2.0);
    case AdmissibleKind::III: {
      double R = mu.R, L = mu.L;
      double I = 0.0;
      if (L > 0)
        I = integrate_sqrt_endpoints(
            [&](double x) { return std::sqrt(std::max(0.0, (R * R - x * x) * (L * L - x * x))) / (1.0 - x * x); },
            0.0, L, spec);
      return mu.lambda * (2.0 * mu.m - 2.0 + 2.0 * I);
    }
  }
  return 0.0;
}

double g_tilde(const AdmissibleDistR& mu, const QuadratureSpec& spec) {
  double d = d_tilde(mu, spec);
  return h_tilde(mu, spec) / (d * d);
}

}  // namespace etlab
