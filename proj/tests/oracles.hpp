#pragma once

// independent reference routines used only by tests

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

constexpr double pi = 3.14159265358979323846;

// composite Simpson on [a, b] with n (even) panels
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  double h = (b - a) / n, s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// int_a^b f with f smooth after y = a + (b - a) sin^2(t); removes sqrt endpoint behaviour
inline double simpson_sqrt(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  return simpson(
      [&](double t) {
        double s = std::sin(t);
        return f(a + (b - a) * s * s) * (b - a) * std::sin(2.0 * t);
      },
      0.0, pi / 2, n);
}

// -W*rho for the circle Type I measure at 1/2, by the mean-zero reduction of the potential
inline double height_type1(double m) {
  auto g = [m](double y) {
    double z = 2.0 * m * y;
    if (z == 0.0) return std::sqrt(1.0 - y * y);
    return std::sqrt(std::max(0.0, 1.0 - y * y)) * std::asin(z) / (z * std::sqrt(1.0 - z * z));
  };
  return 8.0 * m * m / pi * simpson_sqrt(g, 0.0, 1.0, 4000) ;
}

struct Pt {
  double angle, weight;
};

// one-sided discrepancy by exhaustive arc enumeration between atoms
inline double discrepancy_brute(const std::vector<Pt>& at) {
  double best = 0.0;
  const size_t n = at.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      double a = at[i].angle, len = at[j].angle - a;
      len -= std::floor(len);
      double mass = 0.0;
      for (const auto& p : at) {
        double d = p.angle - a;
        d -= std::floor(d);
        if (d <= len + 1e-15) mass += p.weight;
      }
      best = std::max(best, mass - len);
    }
  return best;
}

// 1/2 int int W(x - y) rho(x) rho(y) for a smooth periodic rho: periodic trapezoid in x,
// and in t the symmetric difference rho(x-t)+rho(x+t)-2rho(x) against -log(2 sin pi t),
// graded by t = s^4/2 (W has mean zero, so the rho(x) term drops)
inline double energy_direct(const std::function<double(double)>& rho, int nx = 128, int ns = 4000) {
  double e = 0.0;
  for (int i = 0; i < nx; ++i) {
    double x = static_cast<double>(i) / nx, rx = rho(x);
    double pot = simpson(
        [&](double s) {
          if (s == 0.0) return 0.0;
          double t = 0.5 * std::pow(s, 4), dt = 2.0 * std::pow(s, 3);
          return -std::log(2.0 * std::sin(pi * t)) * (rho(x - t) + rho(x + t) - 2.0 * rx) * dt;
        },
        0.0, 1.0, ns);
    e += rx * pot;
  }
  return 0.5 * e / nx;
}

}  // namespace oracle
