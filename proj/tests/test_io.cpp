#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "etlab/error.hpp"
#include "etlab/io.hpp"

using namespace etlab;
using io::json;

TEST_CASE("measure round trips") {
  EmpiricalMeasure e({{0.1, 0.25}, {0.4, 0.75}});
  auto e2 = io::empirical_from_json(io::to_json(e));
  REQUIRE(e2.size() == 2);
  CHECK(e2.atoms()[1].weight == 0.75);
  CHECK(std::holds_alternative<EmpiricalMeasure>(io::measure_from_json(io::to_json(e))));

  for (const auto& m : {rho_type1(0.2), rho_type2(0.13, 0.22, 0.05), periodize(make_admissible(1.4, 0.1)).measure,
                        MixedMeasureT({}, TrigFamily{{0.2, 0.1}, {0.0, 0.3}}, false)}) {
    auto j = io::to_json(m);
    auto back = io::mixed_from_json(json::parse(j.dump()));
    CHECK(back.tag() == m.tag());
    CHECK(back.total_mass() == doctest::Approx(m.total_mass()).epsilon(1e-12));
    CHECK(back.density(0.31) == doctest::Approx(m.density(0.31)).epsilon(1e-12));
    CHECK(io::to_json(back) == j);
  }
}

TEST_CASE("polynomial and scenario round trips") {
  auto f = PolynomialSpec::from_roots({{1.0, 0.0}, {2.0, 0.3}}, cplx(2, 1));
  auto g = io::polynomial_from_json(io::to_json(f));
  CHECK(g.degree() == 2);
  CHECK(std::abs(g.evaluate(0.3) - f.evaluate(0.3)) < 1e-14);
  auto c = io::polynomial_from_json(json::parse(R"({"coeffs":[[-1,0],[0,0],[1,0]]})"));
  CHECK(c.degree() == 2);
  Scenario s{0.1, 0.2, 0.6, 256, 100, 1e-5};
  auto s2 = io::scenario_from_json(io::to_json(s));
  CHECK(s2.n_cells == 256);
  CHECK(s2.m == 0.2);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse(R"({"x":1})")), Error);
  CHECK_THROWS_AS(io::mixed_from_json(json::parse(R"({"family":{"tag":"nope"}})")), Error);
}

TEST_CASE("files and formatting") {
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), Error);
  auto path = (std::filesystem::temp_directory_path() / "etlab_bad_input.json").string();
  {
    std::ofstream o(path);
    o << "{not json";
  }
  CHECK_THROWS_AS(io::read_json_file(path), Error);
  std::remove(path.c_str());
  CHECK(io::fmt(0.09858441, 4) == "0.09858");
  CHECK(io::fmt(1.1, 6) == "1.1");
}
