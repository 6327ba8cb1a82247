#include <doctest.h>

#include <cmath>

#include "etlab/discretize.hpp"
#include "etlab/error.hpp"
#include "etlab/extremal.hpp"

using namespace etlab;

TEST_CASE("moment matching") {
  auto [u1, u2] = moment_match_cell([](double) { return 2.0; }, 0.0, 0.5);
  CHECK(u1 == doctest::Approx(0.5));
  CHECK(u2 == doctest::Approx(0.5));
  // rho = x on [0, 1]: m1 + m2 = 1/2, m2 = int x^2 = 1/3, so (1/6, 1/3)
  auto [a, b] = moment_match_cell([](double x) { return x; }, 0.0, 1.0);
  CHECK(a == doctest::Approx(1.0 / 6).epsilon(1e-14));
  CHECK(b == doctest::Approx(1.0 / 3).epsilon(1e-14));
  auto [z1, z2] = moment_match_cell([](double) { return 0.0; }, 0.2, 0.3);
  CHECK(z1 == 0.0);
  CHECK(z2 == 0.0);
  CHECK_THROWS_AS(moment_match_moments(1.0, 2.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(moment_match_cell([](double) { return 1.0; }, 1.0, 1.0), Error);
}

TEST_CASE("discretized Type I") {
  auto rho = rho_type1(0.2);
  auto rn = discretize_measure(rho, 512);
  CHECK(rn.total() == doctest::Approx(1.0).epsilon(1e-10));
  double w0 = 0;
  for (const auto& a : rn.atoms())
    if (std::abs(a.angle) < 1e-12) w0 = a.weight;
  CHECK(w0 >= 0.4 - 1e-12);
  CHECK(discrepancy_empirical(rn).value == doctest::Approx(w0).epsilon(1e-12));
  // first moment of each cell pair is preserved: the mean of cos(2 pi x) is exact up to the cell curvature
}

TEST_CASE("height of the discretization approaches the continuum at rate log n / n") {
  auto rho = rho_type1(0.05);
  double H = height_T(rho).value;
  std::vector<double> ex;
  for (int n : {256, 1024, 4096}) {
    auto rn = discretize_measure(rho, n);
    double Hn = height_T(rn, n).value;
    CHECK(Hn > H);
    ex.push_back((Hn - H) * n / std::log(n));
  }
  // fitted constant is stable across n
  for (double c : ex) CHECK(c == doctest::Approx(ex.back()).epsilon(0.5));
}

TEST_CASE("rationalization") {
  EmpiricalMeasure thirds({{0.0, 1.0 / 3}, {0.3, 1.0 / 3}, {0.6, 1.0 / 3}});
  for (auto mode : {Apportion::LargestRemainder, Apportion::Cumulative}) {
    auto r = rationalize(thirds, 4, mode);
    double tot = 0;
    for (const auto& a : r.atoms()) {
      tot += a.weight;
      CHECK(std::abs(a.weight - 1.0 / 3) <= 0.25 + 1e-12);
      CHECK(std::abs(a.weight * 4 - std::round(a.weight * 4)) < 1e-12);
    }
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(rationalize(thirds, 2), Error);
  // largest remainder minimizes max error
  EmpiricalMeasure m({{0.0, 0.57}, {0.3, 0.43}});
  auto r = rationalize(m, 10);
  CHECK(r.atoms()[0].weight == doctest::Approx(0.6));
  CHECK(r.atoms()[1].weight == doctest::Approx(0.4));
}

TEST_CASE("sharpness chain at small size") {
  auto rep = sharpness_pipeline(0.05, 256, 256, true);
  CHECK(rep.continuum.G == doctest::Approx(0.5008366846).epsilon(1e-8));
  CHECK(rep.discrete.G > 0.5);
  CHECK(rep.rational.G > 0.5);
  REQUIRE(rep.polynomial.has_value());
  CHECK(rep.polynomial->holds);
  // D and H of the polynomial match the rational measure
  CHECK(rep.polynomial->D == doctest::Approx(rep.rational.D).epsilon(1e-12));
  CHECK(rep.polynomial->H == doctest::Approx(rep.rational.H).epsilon(1e-6));
  CHECK_THROWS_AS(sharpness_pipeline(0.0, 16, 16), Error);
}

TEST_CASE("degenerate end of the family") {
  auto rho = rho_type1(0.5);
  CHECK(rho.density_mass() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g_ratio(rho) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
}
