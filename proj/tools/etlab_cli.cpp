#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "etlab/discretize.hpp"
#include "etlab/error.hpp"
#include "etlab/extremal.hpp"
#include "etlab/harmonic.hpp"
#include "etlab/io.hpp"
#include "etlab/measures.hpp"
#include "etlab/polynomials.hpp"
#include "etlab/sediment.hpp"

using namespace etlab;
using io::fmt;
using io::json;

namespace {

constexpr int kOk = 0, kViolated = 1, kInputError = 2;

int precision = 6;

// writes to the named file, or stdout for an empty name
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::InputError, "cannot write '" + path + "'");
  out << text;
}

std::string table1_csv() {
  std::ostringstream s;
  s << "k,R,H,D,ratio\n";
  for (const auto& r : table1()) {
    s << r.k << ',' << fmt(r.R, precision) << ',' << fmt(r.H, precision) << ',' << fmt(r.D, precision) << ','
      << (r.ratio ? fmt(*r.ratio, precision) : "") << '\n';
  }
  return s.str();
}

// nonnegative mean-one trig polynomial |g|^2 / ||g||^2, deg g <= deg/2
std::vector<double> random_density(std::mt19937_64& rng, int deg, int grid) {
  std::normal_distribution<double> nd;
  int half = std::uniform_int_distribution<int>(1, std::max(1, deg / 2))(rng);
  std::vector<std::complex<double>> c(half + 1);
  for (auto& x : c) x = {nd(rng), nd(rng)};
  double norm = 0.0;
  for (const auto& x : c) norm += std::norm(x);
  std::vector<double> out(grid);
  for (int j = 0; j < grid; ++j) {
    std::complex<double> z = std::polar(1.0, 2.0 * M_PI * j / grid), g = 0.0, p = 1.0;
    for (const auto& x : c) {
      g += x * p;
      p *= z;
    }
    out[j] = std::norm(g) / norm;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for discrepancy/height inequalities on the circle"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned long long seed = 0;
  app.add_option("--precision", precision, "significant digits in CSV and text output")
      ->check(CLI::Range(1, 17));
  app.add_option("--seed", seed, "seed for randomized corpora");

  auto* cp = app.add_subcommand("check-poly", "check D <= sqrt(2) sqrt(H) for a polynomial JSON document");
  std::string poly_file;
  cp->add_option("file", poly_file, "polynomial JSON")->required();

  auto* t1 = app.add_subcommand("table1", "recompute the H~/D~ table over the R grid");
  std::string t1_out;
  t1->add_option("--out", t1_out, "CSV output path (stdout if omitted)");

  auto* ph = app.add_subcommand("phi", "evaluate Phi(L, R)");
  double phL = 0.0, phR = 0.0;
  ph->add_option("--L", phL)->required();
  ph->add_option("--R", phR)->required();

  auto* ex = app.add_subcommand("extremal", "admissible distributions and the circle extremals");
  int kind = 1;
  std::optional<double> exm, exR;
  double lambda = 1.0;
  std::string density_csv;
  ex->add_option("--kind", kind)->check(CLI::IsMember({1, 2, 3}))->required();
  ex->add_option("--m", exm, "Dirac mass parameter of the circle Type I measure");
  ex->add_option("--R", exR);
  ex->add_option("--lambda", lambda);
  ex->add_option("--emit-density", density_csv, "write density samples as CSV");

  auto* sh = app.add_subcommand("sharpness", "continuum -> discrete -> rational G chain");
  double shm = 0.05;
  int shn = 4096, shq = 4096;
  bool synth = false, cumulative = false;
  sh->add_option("--m", shm)->required();
  sh->add_option("--n", shn)->required();
  sh->add_option("--q", shq)->required();
  sh->add_flag("--synthesize", synth, "also build and check the polynomial (slow for large q)");
  sh->add_flag("--cumulative", cumulative, "cumulative rounding instead of largest remainder");

  auto* sim = app.add_subcommand("simulate", "sediment energy minimization from a scenario JSON");
  std::string scen_file, trace_csv, final_csv;
  sim->add_option("scenario", scen_file)->required();
  sim->add_option("--trace", trace_csv, "iteration,energy,residual CSV");
  sim->add_option("--density", final_csv, "final cell_center,value CSV");

  auto* ga = app.add_subcommand("ganelius", "check the Ganelius estimate for a density");
  std::string dens_file;
  int grid = 4096, corpus = 0;
  ga->add_option("density", dens_file, "measure JSON");
  ga->add_option("--grid", grid)->check(CLI::Range(8, 1 << 22));
  ga->add_option("--corpus", corpus, "check N random trig densities instead (uses --seed)");

  auto* pe = app.add_subcommand("periodize", "periodize an admissible distribution onto the circle");
  std::optional<double> peR;
  double pelambda = 0.1;
  pe->add_option("--R", peR, "omit for kind I");
  pe->add_option("--lambda", pelambda)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*cp) {
      auto f = io::polynomial_from_json(io::read_json_file(poly_file));
      if (!f.has_roots()) f = find_roots(f);
      auto rep = check_et(f);
      auto rr = real_root_check(f);
      json j = io::to_json(rep);
      j["real_roots"] = io::to_json(rr);
      std::cout << j.dump(2) << '\n' << summary(rep) << '\n';
      return rep.holds && rr.holds ? kOk : kViolated;
    }
    if (*t1) {
      std::string csv = table1_csv();
      emit(t1_out, csv);
      for (const auto& r : table1())
        if (r.ratio && !(*r.ratio > 0.5)) return kViolated;
      return kOk;
    }
    if (*ph) {
      std::cout << fmt(phi(phL, phR), precision) << '\n';
      return kOk;
    }
    if (*ex) {
      json j;
      std::ostringstream csv;
      if (kind == 1 && exm) {
        auto rho = rho_type1(*exm);
        double D = discrepancy_mixed(rho).value, H = height_T(rho).value;
        j = {{"measure", io::to_json(rho)}, {"D", D}, {"H", H}, {"G", g_ratio(H, D)}};
        csv << "x,density\n";
        for (int i = 0; i < 1024; ++i) {
          double x = -0.5 + (i + 0.5) / 1024;
          csv << fmt(x, precision) << ',' << fmt(rho.density(x), precision) << '\n';
        }
      } else {
        if (kind != 1 && !exR) throw Error(Errc::InputError, "--R is required for kinds 2 and 3");
        if (kind == 2 && exR && *exR < r_critical())
          throw Error(Errc::InputError, "kind 2 needs R >= R_c");
        if (kind == 3 && exR && *exR >= r_critical())
          throw Error(Errc::InputError, "kind 3 needs R < R_c");
        auto mu = make_admissible(kind == 1 ? std::nullopt : exR, lambda);
        j = {{"kind", kind}, {"lambda", mu.lambda}, {"R", mu.R}, {"L", mu.L}, {"m", mu.m},
             {"H_tilde", h_tilde(mu)}, {"D_tilde", d_tilde(mu)}, {"G_tilde", g_tilde(mu)}};
        double top = 3.0 * std::max(mu.R, 1.0) * mu.lambda;
        csv << "x,density\n";
        for (int i = 0; i < 1024; ++i) {
          double x = top * (i + 0.5) / 1024;
          csv << fmt(x, precision) << ',' << fmt(density_R(mu, x), precision) << '\n';
        }
      }
      std::cout << j.dump(2) << '\n';
      if (!density_csv.empty()) emit(density_csv, csv.str());
      return kOk;
    }
    if (*sh) {
      auto rep = sharpness_pipeline(shm, shn, shq, synth,
                                    cumulative ? Apportion::Cumulative : Apportion::LargestRemainder);
      std::cout << io::to_json(rep).dump(2) << '\n';
      bool ok = true;
      for (const auto& s : {rep.continuum, rep.discrete, rep.rational})
        ok = ok && s.D <= std::sqrt(2.0 * s.H) + 1e-9;
      if (rep.polynomial) ok = ok && rep.polynomial->holds;
      return ok ? kOk : kViolated;
    }
    if (*sim) {
      auto sc = io::scenario_from_json(io::read_json_file(scen_file));
      auto res = run_scenario(sc);
      json j = {{"scenario", io::to_json(sc)},
                {"residual", res.residual},
                {"energy", res.energy},
                {"iterations", res.iterations},
                {"converged", res.converged}};
      std::cout << j.dump(2) << '\n';
      if (!trace_csv.empty()) {
        std::ostringstream t;
        t << "iteration,energy,residual\n";
        for (const auto& p : res.trace)
          t << p.iteration << ',' << fmt(p.energy, precision) << ',' << fmt(p.residual, precision) << '\n';
        emit(trace_csv, t.str());
      }
      if (!final_csv.empty()) {
        std::ostringstream t;
        t << "cell_center,value\n";
        for (int i = 0; i < res.density.n_cells; ++i)
          t << fmt(res.density.center(i), precision) << ',' << fmt(res.density.values[i], precision) << '\n';
        emit(final_csv, t.str());
      }
      return res.converged ? kOk : kViolated;
    }
    if (*ga) {
      if (corpus > 0) {
        std::mt19937_64 rng(seed);
        int held = 0;
        double worst = 0.0;
        for (int i = 0; i < corpus; ++i) {
          auto r = ganelius_check(random_density(rng, 32, grid));
          held += r.holds;
          worst = std::max(worst, r.ratio);
        }
        std::cout << json{{"count", corpus}, {"held", held}, {"max_ratio", worst}}.dump(2) << '\n';
        return held == corpus ? kOk : kViolated;
      }
      if (dens_file.empty()) throw Error(Errc::InputError, "ganelius needs a density file or --corpus");
      auto doc = io::read_json_file(dens_file);
      // accepts a bare measure or any report carrying one under "measure"
      auto rho = io::mixed_from_json(doc.contains("measure") ? doc["measure"] : doc);
      auto rep = ganelius_check(smooth_samples(rho, grid));
      std::cout << io::to_json(rep).dump(2) << '\n';
      return rep.holds ? kOk : kViolated;
    }
    if (*pe) {
      auto mu = make_admissible(peR, pelambda);
      auto p = periodize(mu);
      double H = height_T(p.measure).value;
      json j = {{"J", p.J},
                {"L_circ", p.L_circ},
                {"R_circ", p.R_circ},
                {"total_mass", p.measure.total_mass()},
                {"H", H},
                {"H_tilde", h_tilde(mu)},
                {"measure", io::to_json(p.measure)}};
      std::cout << j.dump(2) << '\n';
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
