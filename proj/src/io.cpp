#include "etlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "etlab/error.hpp"

namespace etlab::io {

namespace {

json pair_list(const std::vector<Atom>& a) {
  json out = json::array();
  for (const auto& x : a) out.push_back({x.angle, x.weight});
  return out;
}

std::vector<Atom> atoms_from(const json& j) {
  std::vector<Atom> out;
  if (!j.is_array()) throw Error(Errc::InputError, "expected a list of [angle, mass] pairs");
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw Error(Errc::InputError, "expected [angle, mass]");
    out.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return out;
}

cplx complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(Errc::InputError, "expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::InputError, std::string("malformed JSON document: ") + e.what());
  }
}

}  // namespace

json to_json(const EmpiricalMeasure& m) { return {{"atoms", pair_list(m.atoms())}}; }

json to_json(const MixedMeasureT& m) {
  json params = std::visit(
      [](const auto& f) -> json {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, TypeIFamily>) {
          return {{"m", f.m}};
        } else if constexpr (std::is_same_v<T, TypeIIFamily>) {
          return {{"M", f.M}, {"R", f.R}, {"L", f.L}};
        } else if constexpr (std::is_same_v<T, PeriodizedFamily>) {
          return {{"kind", static_cast<int>(f.mu.kind)}, {"R", f.mu.R}, {"L", f.mu.L},
                  {"lambda", f.mu.lambda}, {"m", f.mu.m}, {"J", f.J}};
        } else if constexpr (std::is_same_v<T, GridFamily>) {
          json d = json::array();
          for (const auto& [i, w] : f.grid.diracs) d.push_back({i, w});
          return {{"n_cells", f.grid.n_cells}, {"values", f.grid.values}, {"diracs", d},
                  {"total_mass", f.grid.total_mass}};
        } else {
          return {{"a", f.a}, {"b", f.b}};
        }
      },
      m.family());
  return {{"diracs", pair_list(m.diracs())}, {"family", {{"tag", m.tag()}, {"params", params}}}, {"even", m.even()}};
}

json to_json(const PolynomialSpec& f) {
  if (f.has_roots()) {
    json r = json::array();
    for (const auto& x : f.roots()) r.push_back({x.modulus, x.angle});
    return {{"leading", {f.leading().real(), f.leading().imag()}}, {"roots", r}};
  }
  json c = json::array();
  for (const auto& x : f.coeffs()) c.push_back({x.real(), x.imag()});
  return {{"coeffs", c}};
}

json to_json(const EtReport& r) {
  return {{"D", r.D},
          {"H", r.H},
          {"bound", r.bound},
          {"witness", {{"a", r.witness.a}, {"length", r.witness.length}}},
          {"margin", r.margin},
          {"holds", r.holds}};
}

json to_json(const RealRootReport& r) {
  return {{"N_plus", r.n_plus}, {"N_minus", r.n_minus}, {"bound", r.bound}, {"holds", r.holds}};
}

json to_json(const SharpnessReport& r) {
  auto st = [](const StageStats& s) { return json{{"D", s.D}, {"H", s.H}, {"G", s.G}}; };
  json j = {{"m", r.m},
            {"n", r.n},
            {"q", r.q},
            {"continuum", st(r.continuum)},
            {"discrete", st(r.discrete)},
            {"rational", st(r.rational)},
            {"G_continuum", r.continuum.G},
            {"G_discrete", r.discrete.G},
            {"G_rational", r.rational.G}};
  if (r.polynomial) j["polynomial"] = to_json(*r.polynomial);
  return j;
}

json to_json(const GaneliusReport& r) {
  return {{"H", r.H}, {"K", r.K}, {"osc_v", r.osc_v}, {"bound", r.bound}, {"holds", r.holds}, {"ratio", r.ratio}};
}

json to_json(const Scenario& s) {
  return {{"M", s.M}, {"m", s.m}, {"mass", s.mass}, {"n_cells", s.n_cells}, {"iters", s.iters}, {"tol", s.tol}};
}

EmpiricalMeasure empirical_from_json(const json& j) {
  return guarded([&] {
    if (!j.contains("atoms")) throw Error(Errc::InputError, "measure document needs \"atoms\"");
    return EmpiricalMeasure(atoms_from(j.at("atoms")));
  });
}

MixedMeasureT mixed_from_json(const json& j) {
  return guarded([&]() -> MixedMeasureT {
    const auto& fam = j.at("family");
    const std::string tag = fam.at("tag").get<std::string>();
    const json params = fam.value("params", json::object());
    std::vector<Atom> diracs = j.contains("diracs") ? atoms_from(j.at("diracs")) : std::vector<Atom>{};
    if (tag == "TypeI_T") {
      double m = params.at("m").get<double>();
      if (!j.contains("diracs")) return rho_type1(m);
      return MixedMeasureT(diracs, TypeIFamily{m}, true);
    }
    if (tag == "TypeII_T") {
      double M = params.at("M").get<double>(), R = params.at("R").get<double>(), L = params.value("L", 0.0);
      if (!j.contains("diracs")) return rho_type2(M, R, L);
      return MixedMeasureT(diracs, TypeIIFamily{M, R, L}, true);
    }
    if (tag == "Periodized") {
      int kind = params.value("kind", 1);
      double lambda = params.at("lambda").get<double>();
      std::optional<double> R;
      if (kind != 1) R = params.at("R").get<double>();
      return periodize(make_admissible(R, lambda)).measure;
    }
    if (tag == "GridBacked") {
      GridDensity g;
      g.n_cells = params.at("n_cells").get<int>();
      g.values = params.at("values").get<std::vector<double>>();
      for (const auto& d : params.value("diracs", json::array())) g.diracs.push_back({d[0].get<int>(), d[1].get<double>()});
      g.total_mass = params.contains("total_mass") ? params.at("total_mass").get<double>()
                                                   : g.density_mass() + g.dirac_mass();
      return grid_measure(g);
    }
    if (tag == "UniformPlus") {
      TrigFamily t{params.value("a", std::vector<double>{}), params.value("b", std::vector<double>{})};
      return MixedMeasureT(diracs, t, j.value("even", false));
    }
    throw Error(Errc::InputError, "unknown family tag '" + tag + "'");
  });
}

AnyMeasure measure_from_json(const json& j) {
  if (j.contains("family") && !j.at("family").is_null()) return mixed_from_json(j);
  return empirical_from_json(j);
}

PolynomialSpec polynomial_from_json(const json& j) {
  return guarded([&] {
    if (j.contains("roots")) {
      std::vector<PolarRoot> r;
      for (const auto& p : j.at("roots")) r.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
      cplx lead = j.contains("leading") ? complex_from(j.at("leading")) : cplx(1.0);
      return PolynomialSpec::from_roots(std::move(r), lead);
    }
    if (j.contains("coeffs")) {
      std::vector<cplx> c;
      for (const auto& p : j.at("coeffs")) c.push_back(complex_from(p));
      return PolynomialSpec::from_coeffs(std::move(c));
    }
    throw Error(Errc::InputError, "polynomial document needs \"roots\" or \"coeffs\"");
  });
}

Scenario scenario_from_json(const json& j) {
  return guarded([&] {
    Scenario s;
    s.M = j.value("M", s.M);
    s.m = j.value("m", s.m);
    s.mass = j.value("mass", s.mass);
    s.n_cells = j.value("n_cells", s.n_cells);
    s.iters = j.value("iters", s.iters);
    s.tol = j.value("tol", s.tol);
    return s;
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InputError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::InputError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string fmt(double x, int digits) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace etlab::io
