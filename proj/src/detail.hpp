#pragma once

#include <cmath>
#include <utility>

namespace etlab::detail {

// golden-section minimum of f on [a, b]; returns (x, f(x))
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double xtol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > xtol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double xtol) {
  auto r = golden_min([&](double x) { return -f(x); }, a, b, xtol);
  return {r.first, -r.second};
}

}  // namespace etlab::detail
