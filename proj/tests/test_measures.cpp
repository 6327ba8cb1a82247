#include <doctest.h>

#include <cmath>
#include <random>

#include "etlab/error.hpp"
#include "etlab/extremal.hpp"
#include "etlab/measures.hpp"
#include "oracles.hpp"

using namespace etlab;
using oracle::pi;

TEST_CASE("empirical measure construction") {
  EmpiricalMeasure e({{0.75, 0.25}, {-0.25, 0.25}, {0.1, 0.5}});
  REQUIRE(e.size() == 2);
  CHECK(e.atoms()[0].angle == doctest::Approx(-0.25));
  CHECK(e.atoms()[0].weight == doctest::Approx(0.5));
  CHECK(e.total() == doctest::Approx(1.0));
}

TEST_CASE("discrepancy of equally spaced atoms is 1/n") {
  for (int n : {1, 3, 8, 17}) {
    std::vector<Atom> at;
    for (int j = 0; j < n; ++j) at.push_back({static_cast<double>(j) / n, 1.0 / n});
    auto d = discrepancy_empirical(EmpiricalMeasure(at));
    CHECK(d.value == doctest::Approx(1.0 / n).epsilon(1e-14));
    // the witness arc realizes the value
    double len = d.witness.length, mass = 0;
    for (const auto& a : at) {
      double t = a.angle - d.witness.a;
      t -= std::floor(t);
      if (t <= len + 1e-12) mass += a.weight;
    }
    CHECK(mass - len == doctest::Approx(1.0 / n).epsilon(1e-12));
  }
}

TEST_CASE("discrepancy sweep against exhaustive enumeration") {
  EmpiricalMeasure e({{0, 0.5}, {0.3, 0.25}, {0.6, 0.25}});
  double ref = oracle::discrepancy_brute({{0, 0.5}, {0.3, 0.25}, {0.6, 0.25}});
  CHECK(discrepancy_empirical(e).value == doctest::Approx(ref).epsilon(1e-14));
  CHECK(ref == doctest::Approx(0.5));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + t % 30;
    std::vector<Atom> at;
    std::vector<oracle::Pt> pts;
    double tot = 0;
    for (int j = 0; j < n; ++j) {
      double w = u(rng) + 0.01;
      at.push_back({u(rng), w});
      tot += w;
    }
    for (auto& a : at) a.weight /= tot;
    for (const auto& a : at) pts.push_back({a.angle, a.weight});
    EmpiricalMeasure m(at);
    double ref2 = oracle::discrepancy_brute(pts);
    CHECK(discrepancy_empirical(m).value == doctest::Approx(ref2).epsilon(1e-12));
    CHECK(discrepancy_empirical_bruteforce(m).value == doctest::Approx(ref2).epsilon(1e-12));
  }
}

TEST_CASE("Type I circle measure") {
  auto rho = rho_type1(0.2);
  CHECK(rho.density_mass() == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(rho.total_mass() == doctest::Approx(1.0).epsilon(1e-6));
  auto d = discrepancy_mixed(rho);
  CHECK(d.value == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(std::abs(d.witness.a) < 1e-9);
  CHECK(rho.density(0.1) == doctest::Approx(0.0));
  for (double x : {0.25, 0.3, 0.45}) CHECK(rho.density(x) >= 0.0);
  CHECK(std::isinf(rho.potential(0.0)));
}

TEST_CASE("height of Type I against the mean-zero reduction oracle") {
  for (double m : {0.05, 0.25}) {
    auto rho = rho_type1(m);
    double H = height_T(rho).value;
    CHECK(H == doctest::Approx(oracle::height_type1(m)).epsilon(1e-8));
    CHECK(-rho.potential(0.5) == doctest::Approx(H).epsilon(1e-10));
  }
  double G = g_ratio(rho_type1(0.25));
  CHECK(G > 0.5);
  CHECK(G < 0.6);
  // small m approaches the sharp constant 1/2 from above
  double g1 = g_ratio(rho_type1(0.01));
  CHECK(g1 > 0.5);
  CHECK(g1 < 0.5005);
}

TEST_CASE("Type II circle measure discrepancy by a dense cumulative integral") {
  double M = 0.13, R = 0.22, L = 0.05;
  auto rho = rho_type2(M, R, L);
  CHECK(rho.total_mass() == doctest::Approx(1.0).epsilon(1e-6));
  double ref = 2.0 * rho_type2_mass(M, R, L) +
               oracle::simpson([&](double x) { return rho.density(x) - 1.0; }, -M, M, 200000);
  CHECK(discrepancy_mixed(rho).value >= ref - 1e-6);
  CHECK(discrepancy_mixed(rho).value == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("trig family") {
  MixedMeasureT t({}, TrigFamily{{0.5}, {0.0}}, true);
  CHECK(t.density_mass() == doctest::Approx(1.0).epsilon(1e-12));
  // W * cos(2 pi x) = cos(2 pi x)/2
  CHECK(t.potential(0.0) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(t.integrate_density(-0.25, 0.25) == doctest::Approx(0.5 + 0.5 / pi).epsilon(1e-12));
}

TEST_CASE("grid measure and lattice sums") {
  GridDensity g;
  g.n_cells = 8;
  g.values.assign(8, 0.5);
  g.diracs = {{4, 0.5}};
  g.total_mass = 1.0;
  g.check();
  auto m = grid_measure(g);
  CHECK(m.total_mass() == doctest::Approx(1.0));
  // sum_{j != 0} 1/j^2 = pi^2/3
  CHECK(lattice_sum2(0.0) == doctest::Approx(pi * pi / 3).epsilon(1e-12));
  CHECK(lattice_sum4(0.0) == doctest::Approx(pi * pi * pi * pi / 45).epsilon(1e-12));
  // sum_j 1/(x-j)^2 = pi^2 / sin^2(pi x)
  double x = 0.3;
  CHECK(lattice_sum2(x) + 1 / (x * x) == doctest::Approx(pi * pi / std::pow(std::sin(pi * x), 2)).epsilon(1e-12));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(g_ratio(1.0, 0.0), Error);
  CHECK_THROWS_AS(rho_type2(0.3, 0.2, 0.0), Error);
  GridDensity g;
  g.n_cells = 4;
  g.values = {1, 1, 1, -1};
  g.total_mass = 0.5;
  CHECK_THROWS_AS(g.check(), Error);
}
