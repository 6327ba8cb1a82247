#include "etlab/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <map>
#include <numbers>

#include "etlab/error.hpp"
#include "etlab/parallel.hpp"

namespace etlab {

namespace {
constexpr double kPi = std::numbers::pi;

cplx on_circle(double r, double theta) { return std::polar(r, 2.0 * kPi * theta); }

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }
}  // namespace

PolynomialSpec PolynomialSpec::from_coeffs(std::vector<cplx> coeffs) {
  if (coeffs.size() < 2) throw Error(Errc::DomainError, "polynomial degree must be >= 1");
  for (const auto& c : coeffs)
    if (!finite(c)) throw Error(Errc::NonFinite, "non-finite coefficient");
  if (coeffs.front() == 0.0) throw Error(Errc::ZeroCoefficient, "a_0 must be nonzero");
  if (coeffs.back() == 0.0) throw Error(Errc::ZeroCoefficient, "a_n must be nonzero");
  PolynomialSpec p;
  p.degree_ = static_cast<int>(coeffs.size()) - 1;
  p.leading_ = coeffs.back();
  p.coeffs_ = std::move(coeffs);
  return p;
}

PolynomialSpec PolynomialSpec::from_roots(std::vector<PolarRoot> roots, cplx leading) {
  if (roots.empty()) throw Error(Errc::DomainError, "polynomial degree must be >= 1");
  if (!finite(leading) || leading == 0.0) throw Error(Errc::ZeroCoefficient, "leading coefficient must be nonzero");
  PolynomialSpec p;
  p.degree_ = static_cast<int>(roots.size());
  p.leading_ = leading;
  std::map<std::pair<double, double>, int> groups;
  for (auto& r : roots) {
    if (!std::isfinite(r.modulus) || !std::isfinite(r.angle)) throw Error(Errc::NonFinite, "non-finite root");
    if (!(r.modulus > 0)) throw Error(Errc::ZeroCoefficient, "a root at 0 makes a_0 vanish");
    r.angle = wrap(r.angle);
    ++groups[{r.modulus, r.angle}];
  }
  for (const auto& [k, m] : groups) {
    p.distinct_.push_back({k.first, k.second});
    p.mult_.push_back(m);
  }
  p.roots_ = std::move(roots);
  return p;
}

const std::vector<PolarRoot>& PolynomialSpec::roots() const {
  if (!roots_) throw Error(Errc::RootsUnavailable, "only coefficients are known; run find_roots first");
  return *roots_;
}

const std::vector<cplx>& PolynomialSpec::coeffs() const {
  if (!coeffs_) {
    std::vector<cplx> c{leading_};
    for (const auto& r : *roots_) {
      cplx z = on_circle(r.modulus, r.angle);
      c.push_back(0.0);
      for (size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - z * c[k];
      c[0] = -z * c[0];
    }
    for (const auto& v : c)
      if (!finite(v)) throw Error(Errc::NonFinite, "coefficient expansion overflows");
    coeffs_ = std::move(c);
  }
  return *coeffs_;
}

double PolynomialSpec::log_abs_a0() const {
  if (roots_) {
    double s = std::log(std::abs(leading_));
    for (const auto& r : *roots_) s += std::log(r.modulus);
    return s;
  }
  return std::log(std::abs(coeffs_->front()));
}

cplx PolynomialSpec::evaluate(cplx z) const {
  if (roots_) {
    cplx v = leading_;
    for (size_t i = 0; i < distinct_.size(); ++i)
      v *= std::pow(z - on_circle(distinct_[i].modulus, distinct_[i].angle), mult_[i]);
    return v;
  }
  const auto& c = *coeffs_;
  cplx v = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) v = v * z + c[k];
  return v;
}

double PolynomialSpec::log_abs_on_circle(double theta) const {
  if (roots_) {
    // |e^{ia} - r e^{ib}|^2 = (1 - r)^2 + 4 r sin^2((a - b)/2)
    double s = std::log(std::abs(leading_));
    for (size_t i = 0; i < distinct_.size(); ++i) {
      double r = distinct_[i].modulus;
      double sn = std::sin(kPi * (theta - distinct_[i].angle));
      s += 0.5 * mult_[i] * std::log((1.0 - r) * (1.0 - r) + 4.0 * r * sn * sn);
    }
    return s;
  }
  return std::log(std::abs(evaluate(on_circle(1.0, theta))));
}

PolynomialSpec find_roots(const PolynomialSpec& f, int max_iter, double tol) {
  if (f.has_roots()) return f;
  const auto& a = f.coeffs();
  const int n = f.degree();
  // Cauchy bound for the initial circle
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(a[k] / a[n]));
  double rad = std::min(1.0 + bound, 1.0 + std::pow(bound, 1.0 / n));
  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(rad, 2.0 * kPi * (k + 0.25) / n + 0.4);
  auto eval = [&](cplx x, cplx& dp) {
    cplx p = a[n];
    dp = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + a[k];
    }
    return p;
  };
  // a root is frozen once |p| is within the rounding bound of Horner's scheme
  auto noise = [&](cplx x) {
    double r = std::abs(x), s = 0.0;
    for (int k = n; k >= 0; --k) s = s * r + std::abs(a[k]);
    return 4.0 * (n + 1) * std::numeric_limits<double>::epsilon() * s;
  };
  std::vector<char> frozen(n, 0);
  bool done = false;
  for (int it = 0; it < max_iter && !done; ++it) {
    done = true;
    for (int k = 0; k < n; ++k) {
      if (frozen[k]) continue;
      cplx dp;
      cplx p = eval(z[k], dp);
      if (std::abs(p) <= noise(z[k])) {
        frozen[k] = 1;
        continue;
      }
      cplx w = p / dp;
      cplx s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) s += 1.0 / (z[k] - z[j]);
      cplx step = w / (1.0 - w * s);
      if (!finite(step)) continue;
      z[k] -= step;
      if (std::abs(step) > tol * std::max(1.0, std::abs(z[k]))) done = false;
    }
  }
  if (!done) throw Error(Errc::NonConvergence, "Aberth iteration did not converge");
  std::vector<PolarRoot> roots;
  for (const auto& r : z) roots.push_back({std::abs(r), std::arg(r) / (2.0 * kPi)});
  return PolynomialSpec::from_roots(std::move(roots), a[n]);
}

MaxModulus max_log_modulus(const PolynomialSpec& f, int grid_n) {
  const int need = std::max(4096, 64 * f.degree());
  if (grid_n == 0) grid_n = need;
  if (grid_n < need) throw Error(Errc::DomainError, "grid_n must be >= max(4096, 64 n)");
  std::vector<double> v(grid_n);
  const double h = 1.0 / grid_n;
  parallel_for(grid_n, [&](size_t i) { v[i] = f.log_abs_on_circle(i * h); });
  std::vector<int> idx(grid_n);
  for (int i = 0; i < grid_n; ++i) idx[i] = i;
  const int top = std::min(5, grid_n);
  std::partial_sort(idx.begin(), idx.begin() + top, idx.end(),
                    [&](int l, int r) { return v[l] > v[r] || (v[l] == v[r] && l < r); });
  MaxModulus best{v[idx[0]], wrap(idx[0] * h)};
  auto g = [&](double t) { return f.log_abs_on_circle(t); };
  for (int t = 0; t < top; ++t) {
    double lo = (idx[t] - 1) * h, hi = (idx[t] + 1) * h;
    for (int s = 0; s < 60; ++s) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (g(m1) < g(m2))
        lo = m1;
      else
        hi = m2;
    }
    double x = 0.5 * (lo + hi), gx = g(x);
    if (gx > best.value) best = {gx, wrap(x)};
  }
  return best;
}

double height_poly(const PolynomialSpec& f, int grid_n) {
  double m = max_log_modulus(f, grid_n).value;
  return (m - 0.5 * (f.log_abs_a0() + f.log_abs_an())) / f.degree();
}

int sector_count(const PolynomialSpec& f, double alpha, double beta) {
  if (!(alpha <= beta && beta < alpha + 1.0)) throw Error(Errc::DomainError, "sector needs alpha <= beta < alpha + 1");
  const double eps = 1e-12, len = beta - alpha;
  int c = 0;
  for (const auto& r : f.roots()) {
    double d = r.angle - alpha;
    d -= std::floor(d);
    if (d <= len + eps || d >= 1.0 - eps) ++c;
  }
  return c;
}

EmpiricalMeasure root_measure(const PolynomialSpec& f) {
  std::vector<Atom> atoms;
  const double w = 1.0 / f.degree();
  for (const auto& r : f.roots()) atoms.push_back({r.angle, w});
  return EmpiricalMeasure(std::move(atoms));
}

DiscrepancyResult discrepancy_poly(const PolynomialSpec& f) { return discrepancy_empirical(root_measure(f)); }

EtReport check_et(const PolynomialSpec& f, int grid_n) {
  auto d = discrepancy_poly(f);
  double H = height_poly(f, grid_n);
  double bound = std::sqrt(2.0) * std::sqrt(std::max(0.0, H));
  return {d.value, H, bound, d.witness, bound - d.value, d.value <= bound + 1e-9};
}

std::string summary(const EtReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "D=%.6g H=%.6g bound=%.6g margin=%.6g %s", r.D, r.H, r.bound, r.margin,
                r.holds ? "holds" : "VIOLATED");
  return buf;
}

PolynomialSpec schur_reduce(const PolynomialSpec& f) {
  std::vector<PolarRoot> r = f.roots();
  for (auto& x : r) x.modulus = 1.0;
  return PolynomialSpec::from_roots(std::move(r), 1.0);
}

int count_at_angle(const PolynomialSpec& f, double theta) {
  int c = 0;
  for (const auto& r : f.roots())
    if (std::abs(wrap(r.angle - theta)) <= 1e-12) ++c;
  return c;
}

RealRootReport real_root_check(const PolynomialSpec& f, int grid_n) {
  int np = count_at_angle(f, 0.0), nm = count_at_angle(f, 0.5);
  double H = height_poly(f, grid_n);
  double bound = std::sqrt(2.0) * std::sqrt(std::max(0.0, H)) * f.degree();
  return {np, nm, bound, np <= bound + 1e-9 && nm <= bound + 1e-9};
}

PolynomialSpec synthesize_poly(const EmpiricalMeasure& rho, int q) {
  if (q < 1) throw Error(Errc::NonRationalWeights, "q must be positive");
  std::vector<PolarRoot> roots;
  long total = 0;
  for (const auto& a : rho.atoms()) {
    double p = a.weight * q;
    long pi = std::lround(p);
    if (std::abs(p - pi) > 1e-9 || pi < 0) throw Error(Errc::NonRationalWeights, "weight is not a multiple of 1/q");
    total += pi;
    for (long k = 0; k < pi; ++k) roots.push_back({1.0, a.angle});
  }
  if (total != q) throw Error(Errc::NonRationalWeights, "weights do not sum to 1");
  return PolynomialSpec::from_roots(std::move(roots), 1.0);
}

}  // namespace etlab
