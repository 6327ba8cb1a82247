#include "etlab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "etlab/error.hpp"
#include "etlab/parallel.hpp"

namespace etlab {

namespace {
constexpr double kPi = std::numbers::pi;

// F(t) = int_0^t log|s| ds
double xlogx_m(double t) { return t == 0.0 ? 0.0 : t * std::log(std::abs(t)) - t; }

template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

QuadratureSpec tight_spec() {
  QuadratureSpec s;
  s.panels = 4;
  s.abs_tol = 1e-13;
  s.max_refinements = 50;
  return s;
}

// int_{y0}^inf (mu_c(y) - 1) dy at unit scale, y = y0 cosh t
double tail_integral(const AdmissibleDistR& mu, double y0) {
  const double T = 40.0;
  double v = integrate_smooth(
      [&](double t) {
        double y = y0 * std::cosh(t);
        return mu.excess(y) * y0 * std::sinh(t);
      },
      0.0, T, tight_spec());
  return v + mu.c2() / (y0 * std::cosh(T));
}

}  // namespace

QuadratureSpec phi_spec() {
  QuadratureSpec s;
  s.panels = 4;
  s.nodes_per_panel = 32;
  s.abs_tol = 1e-12;
  s.max_refinements = 50;
  return s;
}

double phi(double L, double R, const QuadratureSpec& spec) {
  if (!(L >= 0 && L < 1 && R > 1)) throw Error(Errc::DomainError, "phi needs 0 <= L < 1 < R");
  // u = x^2: (pi/2) pv int_{A}^{B} g(u)/(u-1) du with g = sqrt((B-u)(u-A)/u); the pole is removed
  // exactly: (g(u)-g(1))/(u-1) = (AB/u - 1)/(g(u)+g(1))
  double A = L * L, B = R * R;
  auto g = [&](double u) { return std::sqrt(std::max(0.0, A + B - u - (A == 0.0 ? 0.0 : A * B / u))); };
  double g1 = g(1.0);
  double I = integrate_sqrt_endpoints(
      [&](double u) { return ((A == 0.0 ? 0.0 : A * B / u) - 1.0) / (g(u) + g1); }, A, B, spec);
  return 0.5 * kPi * (I + g1 * std::log((B - 1.0) / (1.0 - A)));
}

double rc_function(double R) {
  double s = std::sqrt(R * R - 1.0);
  return s * std::log(R + s) - R;
}

double r_critical() {
  static const double rc = bisect(rc_function, 1.0 + 1e-9, 3.0, 1e-14);
  return rc;
}

double l_of_r(double R) {
  double rc = r_critical();
  if (!(R > 1.0 && R < rc)) throw Error(Errc::DomainError, "l_of_r needs 1 < R < R_c");
  const double lo = 1e-6, hi = 1.0 - 1e-6;
  auto f = [&](double L) { return phi(L, R); };
  if (f(lo) > 0 || f(hi) < 0) throw Error(Errc::DomainError, "phi has no sign change in L");
  return bisect(f, lo, hi, 1e-13);
}

AdmissibleDistR make_admissible(std::optional<double> R, double lambda) {
  if (!(lambda > 0)) throw Error(Errc::DomainError, "lambda must be positive");
  AdmissibleDistR mu;
  mu.lambda = lambda;
  if (!R) {
    mu.kind = AdmissibleKind::I;
    mu.m = 1.0;
    return mu;
  }
  double r = *R;
  if (!(r > 1.0)) throw Error(Errc::DomainError, "R must exceed 1");
  mu.R = r;
  if (r >= r_critical()) {
    mu.kind = AdmissibleKind::II;
    mu.L = 0.0;
  } else {
    mu.kind = AdmissibleKind::III;
    mu.L = l_of_r(r);
  }
  mu.m = 0.5 * kPi * std::sqrt((r * r - 1.0) * (1.0 - mu.L * mu.L));
  return mu;
}

double density_R(const AdmissibleDistR& mu, double x) {
  double z = x / mu.lambda;
  bool at = mu.kind == AdmissibleKind::I ? z == 0.0 : std::abs(z) == 1.0;
  if (at) throw Error(Errc::AtDirac, "density_R evaluated at a Dirac location");
  return mu.excess(z);
}

double potential_R(const AdmissibleDistR& mu, double x) {
  double lam = mu.lambda;
  double z = std::abs(x / lam);
  QuadratureSpec sp = tight_spec();
  sp.panels = 1;
  sp.abs_tol = 1e-12;

  CompensatedSum s;
  // diracs
  if (mu.kind == AdmissibleKind::I) {
    s.add(kernel_R(z));
  } else {
    s.add(mu.m * (kernel_R(z - 1.0) + kernel_R(z + 1.0)));
  }
  // int_0^inf -log|z^2 - y^2| rho(y) dy, rho = -1 + mu_c
  auto gap = [&](double p, double q) {  // rho = -1
    return xlogx_m(q - z) - xlogx_m(p - z) + xlogx_m(q + z) - xlogx_m(p + z);
  };
  auto kern = [&](double y) { return -std::log(std::abs(z * z - y * y)); };
  auto finite_piece = [&](double p, double q) {
    auto f = [&](double y) { return kern(y) * mu.excess(y); };
    if (z > p && z < q) return integrate_endpoint_singular(f, p, z, sp) + integrate_endpoint_singular(f, z, q, sp);
    return integrate_endpoint_singular(f, p, q, sp);
  };
  auto infinite_piece = [&](double y0) {
    auto f = [&](double t) {
      double y = y0 * std::cosh(t);
      return kern(y) * mu.excess(y) * y0 * std::sinh(t);
    };
    double tz = z > y0 ? std::acosh(z / y0) : 0.0;
    double T = tz + 45.0;
    if (tz > 0) return integrate_endpoint_singular(f, 0.0, tz, sp) + integrate_endpoint_singular(f, tz, T, sp);
    return integrate_endpoint_singular(f, 0.0, T, sp);
  };
  switch (mu.kind) {
    case AdmissibleKind::I: {
      double c = 1.0 / kPi;
      s.add(gap(0.0, c));
      s.add(infinite_piece(c));
      break;
    }
    case AdmissibleKind::II:
      s.add(gap(0.0, mu.R));
      s.add(infinite_piece(mu.R));
      break;
    case AdmissibleKind::III:
      if (mu.L > 0) s.add(finite_piece(0.0, mu.L));
      s.add(gap(mu.L, mu.R));
      s.add(infinite_piece(mu.R));
      break;
  }
  // (W~ * mu(./lam))(x) = lam (W~ * mu)(x/lam) since mu has zero total mass
  return lam * s.value();
}

double h_tilde_quadrature(const AdmissibleDistR& mu) {
  double l2 = mu.lambda * mu.lambda;
  QuadratureSpec sp = tight_spec();
  if (mu.kind == AdmissibleKind::I) {
    double c = 1.0 / kPi;
    double I = integrate_sqrt_endpoints([&](double y) { return std::sqrt(std::max(0.0, c * c - y * y)); }, 0.0, c, sp);
    return l2 * 2.0 * kPi * I;
  }
  double A = mu.L * mu.L, B = mu.R * mu.R;
  // generic subtracted-pole route, independent of the algebraic form used by phi
  double I = pv_integrate_sqrt_endpoints([&](double u) { return std::sqrt(std::max(0.0, (B - u) * (u - A))); },
                                         A, B, 1.0, sp);
  return l2 * kPi * I;
}

double d_tilde_mass_balance(const AdmissibleDistR& mu) {
  double v;
  if (mu.kind == AdmissibleKind::I) {
    v = tail_integral(mu, 1.0);
  } else {
    v = -(mu.R - 1.0) + tail_integral(mu, mu.R);
  }
  return -2.0 * mu.lambda * v;
}

MixedMeasureT rho_type1(double m) {
  if (!(m > 0 && m <= 0.5)) throw Error(Errc::DomainError, "rho_type1 needs 0 < m <= 1/2");
  return MixedMeasureT({{0.0, 2.0 * m}}, TypeIFamily{m}, true);
}

double rho_type2_mass(double M, double R, double L) {
  auto sn = [](double v) { return std::sin(kPi * v); };
  double p = -sn(M - R) * sn(M + R) * sn(M - L) * sn(M + L);
  return std::sqrt(std::max(0.0, p)) / std::sin(2.0 * kPi * M);
}

MixedMeasureT rho_type2(double M, double R, double L) {
  if (!(L >= 0 && L < M && M < R && R < 0.5)) throw Error(Errc::DomainError, "rho_type2 needs 0 <= L < M < R < 1/2");
  double m = rho_type2_mass(M, R, L);
  return MixedMeasureT({{M, m}, {-M, m}}, TypeIIFamily{M, R, L}, true);
}

PeriodizeResult periodize(const AdmissibleDistR& mu) {
  double lam = mu.lambda;
  if (mu.kind == AdmissibleKind::I) {
    if (!(lam <= 1.0)) throw Error(Errc::LambdaTooLarge, "kind I periodization needs lambda <= 1");
  } else if (!(lam <= 0.5 && lam * mu.m < 0.5)) {
    throw Error(Errc::LambdaTooLarge, "periodization needs lambda <= 1/2 and lambda m < 1/2");
  }
  // remainder after the z^-2 and z^-4 terms is O(z^-6): C6 bounds |r(z)| z^6 on [z0, 2 z0]
  auto bps = mu.breakpoints();
  double z0 = std::max(5.0, 2.0 * bps.back());
  double c2 = mu.c2(), c4 = mu.c4();
  double C6 = 0.0;
  for (int i = 0; i <= 64; ++i) {
    double z = z0 * (1.0 + i / 64.0);
    double r = mu.excess(z) - c2 / (z * z) - c4 / (z * z * z * z);
    C6 = std::max(C6, std::abs(r) * std::pow(z, 6));
  }
  C6 *= 4.0;
  double l6 = std::pow(lam, 6);
  int J = std::max(2, static_cast<int>(std::ceil(z0 * lam)));
  while (2.0 * C6 * l6 / (5.0 * std::pow(J - 0.5, 5)) >= 1e-10) ++J;

  std::vector<Atom> diracs;
  if (mu.kind == AdmissibleKind::I)
    diracs.push_back({0.0, lam});
  else
    diracs = {{lam, lam * mu.m}, {-lam, lam * mu.m}};
  PeriodizedFamily fam{mu, J};
  MixedMeasureT meas(diracs, fam, true);

  // sign changes of the density on (0, 1/2]
  const int N = 8192;
  auto dens = [&](double x) { return periodized_density(fam, x); };
  auto refine = [&](double a, double b) {
    double fa = dens(a);
    for (int it = 0; it < 60; ++it) {
      double m = 0.5 * (a + b);
      double fm = dens(m);
      if ((fm < 0) == (fa < 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };
  double Lc = 0.0, Rc = 0.0;
  bool found = false;
  double prev_x = 1e-9, prev = dens(prev_x);
  if (prev < 0) {
    Lc = 0.0;
    found = true;
  }
  for (int i = 1; i <= N; ++i) {
    double x = 0.5 * i / N;
    double v = dens(x);
    if (!found && prev >= 0 && v < 0) {
      Lc = refine(prev_x, x);
      found = true;
    }
    if (prev < 0 && v >= 0) Rc = refine(prev_x, x);
    prev = v;
    prev_x = x;
  }
  if (found && prev < 0) Rc = 0.5;
  return {std::move(meas), Lc, Rc, J};
}

const std::array<double, 19>& table1_grid() {
  static const std::array<double, 19> g = {1.1000, 1.1292, 1.1592, 1.1900, 1.2216, 1.2541, 1.2874,
                                           1.3216, 1.3567, 1.3927, 1.4297, 1.4677, 1.5067, 1.5467,
                                           1.5878, 1.6300, 1.6733, 1.7177, 1.7633};
  return g;
}

std::vector<Table1Row> table1() {
  const auto& g = table1_grid();
  std::vector<Table1Row> rows(20);
  parallel_for(20, [&](size_t k) {
    AdmissibleDistR mu;
    mu.kind = AdmissibleKind::III;
    mu.lambda = 1.0;
    if (k < 19) {
      mu.R = g[k];
      mu.L = l_of_r(mu.R);
    } else {
      mu.R = r_critical();
      mu.L = 0.0;
    }
    mu.m = 0.5 * kPi * std::sqrt((mu.R * mu.R - 1.0) * (1.0 - mu.L * mu.L));
    QuadratureSpec sp = tight_spec();
    rows[k] = Table1Row{static_cast<int>(k), mu.R, mu.L, h_tilde(mu, sp), d_tilde(mu, sp), std::nullopt};
  });
  for (int k = 0; k < 19; ++k) rows[k].ratio = rows[k].H / (rows[k + 1].D * rows[k + 1].D);
  return rows;
}

Lemma57Bounds lemma57_bounds(double R, double L) {
  double d = R * R - L * L;
  return {kPi * kPi * d * d / (8.0 * (R + 1.0) * R), kPi * (1.0 - L) * (1.0 + 2.0 * (1.0 - L) / kPi)};
}

}  // namespace etlab
