#include "etlab/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "etlab/error.hpp"

namespace etlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void QuadratureSpec::validate() const {
  if (panels < 1) throw Error(Errc::DomainError, "panels must be >= 1");
  if (nodes_per_panel < 2) throw Error(Errc::DomainError, "nodes_per_panel must be >= 2");
  if (!(abs_tol > 0)) throw Error(Errc::DomainError, "abs_tol must be > 0");
  if (max_refinements < 1) throw Error(Errc::DomainError, "max_refinements must be >= 1");
}

double wrap(double x) {
  double r = x - std::floor(x + 0.5);
  if (r >= 0.5) r -= 1.0;
  if (r < -0.5) r += 1.0;
  return r;
}

double kernel_T(double x) {
  double r = wrap(x);
  if (r == 0.0) return kInf;
  return -std::log(std::abs(2.0 * std::sin(kPi * r)));
}

double kernel_R(double x) {
  if (x == 0.0) return kInf;
  return -std::log(std::abs(x));
}

double clausen2(double theta) {
  // reduce to (-pi, pi], Cl_2 is odd and 2pi-periodic
  double t = theta - 2.0 * kPi * std::floor(theta / (2.0 * kPi) + 0.5);
  if (t == 0.0) return 0.0;
  double sgn = t < 0 ? -1.0 : 1.0;
  t = std::abs(t);
  // Cl_2(t) = t - t log t + sum_n 2 zeta(2n) t^{2n+1} / ((2pi)^{2n} 2n (2n+1))
  static const std::array<double, 40> zeta2n = [] {
    std::array<double, 40> z{};
    for (int n = 1; n <= 40; ++n) z[n - 1] = std::riemann_zeta(2.0 * n);
    return z;
  }();
  double q = (t / (2.0 * kPi)) * (t / (2.0 * kPi));
  double pw = 1.0;
  double s = 0.0;
  for (int n = 1; n <= 40; ++n) {
    pw *= q;
    double term = 2.0 * zeta2n[n - 1] * pw * t / (2.0 * n * (2.0 * n + 1.0));
    s += term;
    if (term < 1e-18 * std::abs(s)) break;
  }
  return sgn * (t - t * std::log(t) + s);
}

double kernel_T_antiderivative(double x) { return clausen2(2.0 * kPi * x) / (2.0 * kPi); }

const GaussRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto rule = std::make_unique<GaussRule>();
  rule->x.resize(n);
  rule->w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
    }
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule->x[i] = -z;
    rule->x[n - 1 - i] = z;
    rule->w[i] = w;
    rule->w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->x[n / 2] = 0.0;
  const GaussRule& ref = *rule;
  cache.emplace(n, std::move(rule));
  return ref;
}

void CompensatedSum::add(double v) {
  double t = s + v;
  if (std::abs(s) >= std::abs(v))
    c += (s - t) + v;
  else
    c += (v - t) + s;
  s = t;
}

namespace {

double gl_panel(const Integrand& f, double a, double b, const GaussRule& r) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  CompensatedSum s;
  for (size_t i = 0; i < r.x.size(); ++i) {
    double x = c + h * r.x[i];
    double v = f(x);
    if (!std::isfinite(v)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      throw Error(Errc::NonFinite, std::string("integrand non-finite at x=") + buf);
    }
    s.add(r.w[i] * v);
  }
  return s.value() * h;
}

// global control: split the panel with the largest error estimate until the summed
// estimate meets tol; panels whose estimate is at rounding level stop counting
double adaptive_panel(const Integrand& f, double a, double b, double tol, const QuadratureSpec& spec) {
  if (a == b) return 0.0;
  const GaussRule& r = gauss_legendre(spec.nodes_per_panel);
  struct Panel {
    double a, b, left, right, err;
  };
  auto make = [&](double lo, double hi, double coarse) {
    double m = 0.5 * (lo + hi);
    double l = gl_panel(f, lo, m, r), rt = gl_panel(f, m, hi, r);
    double floor_tol = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(l) + std::abs(rt));
    double e = std::abs(l + rt - coarse);
    return Panel{lo, hi, l, rt, e <= floor_tol ? 0.0 : e};
  };
  std::vector<Panel> panels{make(a, b, gl_panel(f, a, b, r))};
  auto cmp = [&](size_t i, size_t j) {
    return panels[i].err < panels[j].err || (panels[i].err == panels[j].err && i > j);
  };
  std::vector<size_t> heap{0};
  double total = panels[0].err;
  const size_t budget = 64 * static_cast<size_t>(spec.max_refinements);
  for (size_t splits = 0; total > tol; ++splits) {
    if (splits >= budget)
      throw Error(Errc::ToleranceNotMet, "adaptive refinement budget exhausted on [" + std::to_string(a) +
                                             "," + std::to_string(b) + "]");
    std::pop_heap(heap.begin(), heap.end(), cmp);
    size_t i = heap.back();
    heap.pop_back();
    Panel p = panels[i];
    double m = 0.5 * (p.a + p.b);
    panels[i] = make(p.a, m, p.left);
    panels.push_back(make(m, p.b, p.right));
    heap.push_back(i);
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(panels.size() - 1);
    std::push_heap(heap.begin(), heap.end(), cmp);
    total = 0.0;
    for (const auto& q : panels) total += q.err;
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum s;
  for (const auto& q : panels) {
    s.add(q.left);
    s.add(q.right);
  }
  return s.value();
}

// graded panels halving toward one end of [a,b]; the singular end is never evaluated
double graded(const Integrand& f, double a, double b, bool toward_a, double tol,
              const QuadratureSpec& spec) {
  if (a == b) return 0.0;
  const GaussRule& r = gauss_legendre(spec.nodes_per_panel);
  double len = b - a;
  CompensatedSum sum;
  double w = len;
  // below this width GL nodes crowd the singular end at rounding level
  const double floor_w = 1e6 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(a), std::abs(b)});
  for (int k = 0;; ++k) {
    double half = 0.5 * w;
    double lo = toward_a ? a + half : b - w;
    double hi = toward_a ? a + w : b - half;
    double c = adaptive_panel(f, lo, hi, tol / 16.0, spec);
    sum.add(c);
    w = half;
    if (k >= 2 && std::abs(c) < 0.25 * tol) break;
    if (w < floor_w) {
      // sliver of width w at the end: fit A + B log d or C d^p from d = w, w/2, keep the model
      // that better predicts d = w/4, and integrate it exactly
      auto at = [&](double d) { return f(toward_a ? a + d : b - d); };
      double f1 = at(w), f2 = at(0.5 * w), f3 = at(0.25 * w);
      double B = (f1 - f2) / std::log(2.0), A = f1 - B * std::log(w);
      double in = A * w + B * (w * std::log(w) - w);
      if (f1 != 0.0 && f2 != 0.0 && (f1 > 0) == (f2 > 0)) {
        double p = std::log2(f1 / f2);
        if (p > -0.999 && std::abs(f3 - f2 * f2 / f1) < std::abs(f3 - (f2 - B * std::log(2.0)))) in = f1 * w / (p + 1.0);
      }
      sum.add(in);
      return sum.value();
    }
    if (k >= spec.max_refinements)
      throw Error(Errc::ToleranceNotMet, "graded refinement did not reach tolerance");
  }
  // innermost remainder, single panel
  sum.add(toward_a ? gl_panel(f, a, a + w, r) : gl_panel(f, b - w, b, r));
  return sum.value();
}

}  // namespace

double integrate_smooth(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return 0.0;
  if (b < a) return -integrate_smooth(f, b, a, spec);
  double h = (b - a) / spec.panels;
  CompensatedSum s;
  for (int i = 0; i < spec.panels; ++i) {
    double lo = a + i * h;
    double hi = i + 1 == spec.panels ? b : a + (i + 1) * h;
    s.add(adaptive_panel(f, lo, hi, spec.abs_tol / spec.panels, spec));
  }
  return s.value();
}

double integrate_endpoint_singular(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return 0.0;
  if (b < a) return -integrate_endpoint_singular(f, b, a, spec);
  double m = 0.5 * (a + b);
  return graded(f, a, m, true, 0.5 * spec.abs_tol, spec) +
         graded(f, m, b, false, 0.5 * spec.abs_tol, spec);
}

double integrate_log_singular(const Integrand& f, double a, double b, double s,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return 0.0;
  if (b < a) return -integrate_log_singular(f, b, a, s, spec);
  if (s < a || s > b) throw Error(Errc::DomainError, "singularity outside [a,b]");
  double out = 0.0;
  if (s > a) out += graded(f, a, s, false, 0.5 * spec.abs_tol, spec);
  if (s < b) out += graded(f, s, b, true, 0.5 * spec.abs_tol, spec);
  return out;
}

double pv_integrate(const Integrand& f, double a, double b, double p, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a < b)) throw Error(Errc::DegenerateInterval, "pv_integrate needs a < b");
  if (p <= a || p >= b) throw Error(Errc::PoleOnBoundary, "pole not strictly inside (a,b)");
  double delta = std::min(p - a, b - p);
  double tol = spec.abs_tol;

  QuadratureSpec inner = spec;
  inner.abs_tol = 0.5 * tol;
  // offsets snapped to the spacing at |p|+delta so p+t and p-t are exact and symmetric
  const double m = std::abs(p) + delta;
  const double ulp = 2.0 * (std::nextafter(m, 2.0 * m + 1.0) - m);
  double paired = integrate_smooth(
      [&](double t) {
        double ts = std::round(t / ulp) * ulp;
        return ts == 0.0 ? 0.0 : f(p + ts) + f(p - ts);
      },
      0.0, delta, inner);

  // remainder on the long side, panel widths doubling away from the pole
  double lo, hi;
  bool right = (b - p) > (p - a);
  if (right) {
    lo = p + delta;
    hi = b;
  } else {
    lo = a;
    hi = p - delta;
  }
  CompensatedSum rem;
  if (hi > lo) {
    int count = 1;
    for (double w = delta, cov = delta; cov < hi - lo; w *= 2.0, cov += w) ++count;
    double ptol = 0.5 * tol / count;
    double w = delta;
    double pos = right ? lo : hi;
    while (right ? pos < hi : pos > lo) {
      double nxt = right ? std::min(hi, pos + w) : std::max(lo, pos - w);
      double x0 = std::min(pos, nxt), x1 = std::max(pos, nxt);
      rem.add(adaptive_panel(f, x0, x1, ptol, spec));
      pos = nxt;
      w *= 2.0;
    }
  }
  return paired + rem.value();
}

double integrate_sqrt_endpoints(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  if (!(b > a)) throw Error(Errc::DegenerateInterval, "integrate_sqrt_endpoints needs b > a");
  double len = b - a;
  return integrate_smooth(
      [&](double phi) {
        double s = std::sin(phi);
        double x = a + len * s * s;
        return f(x) * len * std::sin(2.0 * phi);
      },
      0.0, 0.5 * kPi, spec);
}

double pv_integrate_sqrt_endpoints(const Integrand& g, double a, double b, double p,
                                   const QuadratureSpec& spec) {
  if (!(b > a)) throw Error(Errc::DegenerateInterval, "pv_integrate_sqrt_endpoints needs b > a");
  if (p <= a || p >= b) throw Error(Errc::PoleOnBoundary, "pole not strictly inside (a,b)");
  double gp = g(p);
  double I = integrate_sqrt_endpoints(
      [&](double x) {
        double d = x - p;
        return d == 0.0 ? 0.0 : (g(x) - gp) / d;
      },
      a, b, spec);
  return I + gp * std::log((b - p) / (p - a));
}

}  // namespace etlab
