// Command-line front end: identity-check suites, circular-orbit solvers,
// polarization bases, field synthesis, and medium operator checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "photospin/expr.hpp"
#include "photospin/io.hpp"
#include "photospin/suites.hpp"

namespace {

using namespace photospin;
using nlohmann::json;

struct RunConfig {
  unsigned long long seed = 12345;
  std::string format = "json";  // csv | json
  std::string out;              // empty -> stdout
  std::map<std::string, double> tolerances;

  double tolerance(const std::string& suite) const {
    auto it = tolerances.find(suite);
    if (it != tolerances.end()) return it->second;
    it = tolerances.find("default");
    if (it != tolerances.end()) return it->second;
    return 1e-9;
  }
};

void load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file: " + path);
  json j = json::parse(f);  // throws json::parse_error on malformed input
  if (j.contains("seed")) cfg.seed = j.at("seed").get<unsigned long long>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  if (j.contains("tolerances"))
    for (auto& [k, v] : j.at("tolerances").items()) {
      const double tol = v.get<double>();
      if (!(tol > 0.0)) throw IoError("tolerances must be positive: " + k);
      cfg.tolerances[k] = tol;
    }
  if (cfg.format != "csv" && cfg.format != "json")
    throw IoError("format must be csv or json");
}

int run_check(const RunConfig& cfg, const std::string& suite) {
  std::vector<std::pair<std::string, CheckReport>> results;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("algebra")) results.emplace_back("algebra", suite_algebra(cfg.seed));
  if (want("polarization")) results.emplace_back("polarization", suite_polarization(cfg.seed));
  if (want("symmetries")) results.emplace_back("symmetries", suite_symmetries(cfg.seed));
  if (want("medium")) results.emplace_back("medium", suite_medium(cfg.seed));
  if (want("gravity")) results.emplace_back("gravity", suite_gravity(cfg.seed));
  if (results.empty()) {
    std::cerr << "unknown suite: " << suite << "\n";
    return 2;
  }
  bool ok = true;
  std::string first_fail;
  double first_dev = 0.0;
  json jout = json::array();
  std::string csv = csv_row({"suite", "check", "deviation", "pass"});
  for (const auto& [name, rep] : results) {
    const double tol = cfg.tolerance(name);
    for (const CheckRecord& r : rep.records) {
      const bool pass = r.deviation < tol;
      if (!pass && ok) {
        ok = false;
        first_fail = name + ": " + r.name;
        first_dev = r.deviation;
      }
      jout.push_back({{"suite", name},
                      {"check", r.name},
                      {"deviation", r.deviation},
                      {"pass", pass}});
      csv += csv_row({name, r.name, format_double(r.deviation), pass ? "true" : "false"});
    }
  }
  write_text(cfg.out, cfg.format == "json" ? jout.dump(2) + "\n" : csv);
  if (!ok) {
    std::cerr << "first failing check: " << first_fail << " (deviation " << first_dev << ")\n";
    return 1;
  }
  return 0;
}

json orbit_json(const OrbitResult& r) {
  return {{"radius", r.radius},
          {"omega_sq_plus", r.omega_sq_plus},
          {"omega_sq_minus", r.omega_sq_minus},
          {"m_or_h", r.m_or_h},
          {"diagnostics",
           {{"residual", r.diagnostics.residual},
            {"iterations", r.diagnostics.iterations},
            {"bracket_lo", r.diagnostics.bracket_lo},
            {"bracket_hi", r.diagnostics.bracket_hi},
            {"discarded_roots", r.diagnostics.discarded}}}};
}

int run_orbit(const RunConfig& cfg, double rs, double h, int m, bool has_h, bool has_m,
              const std::string& coords, double radius, bool scan, double scan_min,
              double scan_max, int scan_samples) {
  const SchwarzschildParams params{
      rs, coords == "standard" ? Chart::Standard : Chart::Isotropic};
  if (scan) {
    const double hh = has_h ? h : static_cast<double>(std::abs(m));
    if (!(hh >= 2.0))
      throw InvalidAngularMomentum("angular momentum below threshold: need h >= 2");
    const double lo = scan_min > 0.0 ? scan_min : 0.27 * rs;
    const double hi = scan_max > 0.0 ? scan_max : 5.0 * rs;
    if (!(lo > rs / 4.0 && hi > lo)) throw DomainViolation("scan range must lie in (rs/4, inf)");
    std::string csv = csv_row({"rho", "omega_sq_plus", "omega_sq_minus", "v_eff"});
    for (int i = 0; i < scan_samples; ++i) {
      const double rho = lo + (hi - lo) * i / (scan_samples - 1);
      const double wp = helicity_omega_sq(Jet2d(rho), rs, hh, +1).v;
      const double wm = helicity_omega_sq(Jet2d(rho), rs, hh, -1).v;
      const double ve = effective_potential(areal_radius(rho, rs), rs, hh);
      csv += csv_row({format_double(rho), format_double(wp), format_double(wm),
                      format_double(ve)});
    }
    write_text(cfg.out, csv);
    return 0;
  }
  if (has_h) {
    if (!(h >= 2.0))
      throw InvalidAngularMomentum("angular momentum below threshold: need h >= 2");
    const HelicityRadii hr = helicity_split_radii(params, h);
    const OrbitResult cl = classical_orbit(params, h);
    json out = {{"rs", rs},
                {"h", h},
                {"rho_zero", hr.rho_zero},
                {"rho_plus", hr.rho_plus},
                {"rho_minus", hr.rho_minus},
                {"averaged_extremal_radius", extremal_radius_average(rs, h)},
                {"classical", orbit_json(cl)},
                {"diagnostics_plus",
                 {{"residual", hr.diag_plus.residual},
                  {"iterations", hr.diag_plus.iterations}}},
                {"diagnostics_minus",
                 {{"residual", hr.diag_minus.residual},
                  {"iterations", hr.diag_minus.iterations}}}};
    write_text(cfg.out, out.dump(2) + "\n");
    return 0;
  }
  if (has_m) {
    const OrbitResult r = params.chart == Chart::Standard
                              ? circular_orbit_standard(params, m, radius)
                              : circular_orbit_isotropic(params, m, radius);
    json out = orbit_json(r);
    out["rs"] = rs;
    out["coords"] = coords;
    write_text(cfg.out, out.dump(2) + "\n");
    return 0;
  }
  std::cerr << "orbit: provide --h or --m\n";
  return 2;
}

int run_modes(const RunConfig& cfg, const std::vector<double>& kvals,
              const std::string& rep_name) {
  if (kvals.size() != 3) {
    std::cerr << "modes: --k needs three components\n";
    return 2;
  }
  const WaveVector kv{Vec3(kvals[0], kvals[1], kvals[2])};
  const PolBasis lin = circular_basis(kv);
  CVec3 rot_plus, rot_minus;
  rotated_circular_basis(kv, rot_plus, rot_minus);
  const ModeSpinor msp = mode_spinors(kv);
  if (cfg.format == "csv") {
    std::string csv = csv_row({"name", "component", "re", "im"});
    auto emit3 = [&](const char* name, const CVec3& v) {
      for (int i = 0; i < 3; ++i)
        csv += csv_row({name, std::to_string(i + 1), format_double(v(i).real()),
                        format_double(v(i).imag())});
    };
    auto emit6 = [&](const char* name, const CVec6& v) {
      for (int i = 0; i < 6; ++i)
        csv += csv_row({name, std::to_string(i + 1), format_double(v(i).real()),
                        format_double(v(i).imag())});
    };
    emit3("eps1", lin.eps1.cast<Complex>());
    emit3("eps2", lin.eps2.cast<Complex>());
    emit3("e0", lin.eps3.cast<Complex>());
    emit3("e_plus", lin.e_plus);
    emit3("e_minus", lin.e_minus);
    emit3("e_plus_rotated", rot_plus);
    emit3("e_minus_rotated", rot_minus);
    emit6("f1", msp.f1);
    emit6("f2", msp.f2);
    emit6("g1", msp.g1);
    emit6("g2", msp.g2);
    write_text(cfg.out, csv);
    return 0;
  }
  json out = {{"k", json_vec(kv.k)},
              {"omega", kv.omega()},
              {"eps1", json_vec(lin.eps1)},
              {"eps2", json_vec(lin.eps2)},
              {"e0", json_vec(lin.eps3)},
              {"e_plus", json_cvec(lin.e_plus)},
              {"e_minus", json_cvec(lin.e_minus)},
              {"e_plus_rotated", json_cvec(rot_plus)},
              {"e_minus_rotated", json_cvec(rot_minus)},
              {"representation", rep_name},
              {"f1", json_cvec(msp.f1)},
              {"f2", json_cvec(msp.f2)},
              {"g1", json_cvec(msp.g1)},
              {"g2", json_cvec(msp.g2)}};
  write_text(cfg.out, out.dump(2) + "\n");
  return 0;
}

int run_field(const RunConfig& cfg, const std::string& modes_path, int n, double length,
              double time, const std::string& rep_name, double refractive_index) {
  std::ifstream f(modes_path);
  if (!f) throw IoError("cannot open mode file: " + modes_path);
  json j = json::parse(f);
  ModeCoefficients coeffs;
  for (const json& e : j) {
    ModeEntry me;
    const auto& k = e.at("k");
    me.k = Vec3(k.at(0).get<double>(), k.at(1).get<double>(), k.at(2).get<double>());
    me.i = e.at("i").get<int>();
    const auto& b = e.at("b");
    me.b = Complex(b.at(0).get<double>(), b.at(1).get<double>());
    coeffs.entries.push_back(me);
  }
  const Representation rep =
      rep_name == "chiral" ? Representation::Chiral : Representation::Standard;
  Grid g;
  g.dims = {n, n, n};
  g.spacing = Vec3::Ones() * (length / n);
  const SpinorGridField field =
      synthesize_field(coeffs, rep, g, time, 0, refractive_index);
  if (!cfg.out.empty()) {
    if (cfg.format == "csv")
      write_text(cfg.out, grid_to_csv(field));
    else
      write_grid_binary(cfg.out, field);
  }
  const Observables obs = observables(field);
  json out = {{"J0", obs.J0},
              {"mode_energy", mode_energy(coeffs, g)},
              {"J", json_vec(obs.J)},
              {"J_angular", json_vec(obs.Jang)},
              {"nodes", g.size()},
              {"written", cfg.out}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_medium_check(const RunConfig& cfg, const std::string& profile_path, int points) {
  std::ifstream f(profile_path);
  if (!f) throw IoError("cannot open profile file: " + profile_path);
  json j = json::parse(f);
  const Expression eps = Expression::parse(j.at("eps_r").get<std::string>());
  const Expression mu = Expression::parse(j.at("mu_r").get<std::string>());
  MediumProfile prof{[eps](const Vec4& x) { return eps.evaluate_jets(x); },
                     [mu](const Vec4& x) { return mu.evaluate_jets(x); }};
  CheckReport rep;
  Rng rng(cfg.seed);
  for (int i = 0; i < points; ++i) {
    const Vec4 x(rng.uniform(-0.5, 0.5), rng.uniform(-1, 1), rng.uniform(-1, 1),
                 rng.uniform(-1, 1));
    rep.merge(medium_second_order_check(prof, x, random_spinor_jet(rng)));
  }
  rep = collapse_worst(rep);
  const double tol = cfg.tolerance("medium");
  bool ok = true;
  json jout = json::array();
  std::string csv = csv_row({"check", "deviation", "pass"});
  for (const CheckRecord& r : rep.records) {
    const bool pass = r.deviation < tol;
    ok = ok && pass;
    jout.push_back({{"check", r.name}, {"deviation", r.deviation}, {"pass", pass}});
    csv += csv_row({r.name, format_double(r.deviation), pass ? "true" : "false"});
  }
  write_text(cfg.out, cfg.format == "json" ? jout.dump(2) + "\n" : csv);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"six-component spinor electromagnetism toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path, format_flag, out_flag;
  unsigned long long seed_flag = 0;
  bool has_seed = false, has_format = false, has_out = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--format", format_flag, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->each([&](const std::string&) { has_format = true; });
  app.add_option("--out", out_flag, "output path (default stdout)")
      ->each([&](const std::string&) { has_out = true; });
  app.add_option("--seed", seed_flag, "random seed")
      ->each([&](const std::string&) { has_seed = true; });

  auto* c_check = app.add_subcommand("check", "run identity/property suites")->fallthrough();
  std::string suite = "all";
  c_check->add_option("suite", suite,
                      "algebra | polarization | symmetries | medium | gravity | all");

  auto* c_orbit = app.add_subcommand("orbit", "Schwarzschild circular photon orbits")->fallthrough();
  c_orbit->set_help_flag("--help", "print help");  // frees -h/--h for angular momentum
  double rs = 1.0, h = 0.0, radius = -1.0, scan_min = -1.0, scan_max = -1.0;
  int m = 0, scan_samples = 200;
  std::string coords = "isotropic";
  bool scan = false;
  c_orbit->add_option("--rs", rs, "Schwarzschild radius");
  auto* opt_h = c_orbit->add_option("--h", h, "orbital angular momentum (real, >= 2)");
  auto* opt_m = c_orbit->add_option("--m", m, "azimuthal quantum number (|m| >= 2)");
  c_orbit->add_option("--coords", coords, "standard | isotropic")
      ->check(CLI::IsMember({"standard", "isotropic"}));
  c_orbit->add_option("--radius", radius, "evaluation radius (default: photon sphere)");
  c_orbit->add_flag("--scan-potential", scan, "emit CSV scan of the split potentials");
  c_orbit->add_option("--scan-min", scan_min, "scan lower bound");
  c_orbit->add_option("--scan-max", scan_max, "scan upper bound");
  c_orbit->add_option("--scan-samples", scan_samples, "scan sample count")
      ->check(CLI::Range(2, 1000000));

  auto* c_modes = app.add_subcommand("modes", "polarization bases and mode spinors")->fallthrough();
  std::vector<double> kvals;
  std::string rep_name = "standard";
  c_modes->add_option("--k", kvals, "wave vector components")->delimiter(',')->expected(3);
  c_modes->add_option("--rep", rep_name, "standard | chiral")
      ->check(CLI::IsMember({"standard", "chiral"}));

  auto* c_field = app.add_subcommand("field", "synthesize a transverse field on a grid")->fallthrough();
  std::string modes_path, field_rep = "standard";
  int grid_n = 16;
  double length = 1.0, time = 0.0, nref = 1.0;
  c_field->add_option("--modes", modes_path, "JSON mode coefficient file")->required();
  c_field->add_option("--n", grid_n, "nodes per axis")->check(CLI::Range(5, 4096));
  c_field->add_option("--length", length, "periodic box length");
  c_field->add_option("--time", time, "evaluation time");
  c_field->add_option("--rep", field_rep, "standard | chiral")
      ->check(CLI::IsMember({"standard", "chiral"}));
  c_field->add_option("--refractive-index", nref, "homogeneous refractive index");

  auto* c_medium = app.add_subcommand("medium", "linear-medium operations")->fallthrough();
  auto* c_medium_check = c_medium->add_subcommand("check", "verify operator identities")->fallthrough();
  std::string profile_path;
  int med_points = 6;
  c_medium_check->add_option("--profile", profile_path, "JSON profile with eps_r/mu_r")
      ->required();
  c_medium_check->add_option("--points", med_points, "sample points")
      ->check(CLI::Range(1, 10000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) load_config(config_path, cfg);
    if (has_seed) cfg.seed = seed_flag;
    if (has_format) cfg.format = format_flag;
    if (has_out) cfg.out = out_flag;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c_check->parsed()) return run_check(cfg, suite);
    if (c_orbit->parsed())
      return run_orbit(cfg, rs, h, m, opt_h->count() > 0, opt_m->count() > 0, coords, radius,
                       scan, scan_min, scan_max, scan_samples);
    if (c_modes->parsed()) return run_modes(cfg, kvals, rep_name);
    if (c_field->parsed())
      return run_field(cfg, modes_path, grid_n, length, time, field_rep, nref);
    if (c_medium->parsed()) {
      if (!c_medium_check->parsed()) {
        std::cerr << "medium: expected the 'check' subcommand\n";
        return 2;
      }
      return run_medium_check(cfg, profile_path, med_points);
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ExprError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
