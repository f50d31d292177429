// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "photospin/suites.hpp"

using namespace photospin;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Grid unit_box(int n) {
  Grid g;
  g.dims = {n, n, n};
  g.spacing = Vec3::Ones() / n;
  return g;
}

ModeCoefficients paired_modes(unsigned long long seed) {
  Rng rng(seed);
  ModeCoefficients mc;
  mc.entries.push_back({2.0 * M_PI * Vec3(0, 1, 2), 1,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  mc.entries.push_back({2.0 * M_PI * Vec3(0, 1, 2), 2,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  return mc;
}

void criterion_orbit_radii() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  try {
    const HelicityRadii hr =
        helicity_split_radii(SchwarzschildParams{1.0, Chart::Isotropic}, 2.0);
    const double dz = std::abs(hr.rho_zero - (2.0 + std::sqrt(3.0)) / 4.0);
    ok = ok && dz < 1e-12;
    ok = ok && std::abs(hr.rho_plus - 1.2954858340) < 1e-3;
    ok = ok && std::abs(hr.rho_minus - 0.7838375145) < 1e-3;
    const double rp = hr.rho_plus, rm = hr.rho_minus;
    const double cubic =
        std::abs(64.0 * rp * rp * rp - 112.0 * rp * rp + 40.0 * rp - 3.0);
    const double quartic = std::abs(128.0 * rm * rm * rm * rm - 32.0 * rm * rm * rm -
                                    80.0 * rm * rm + 22.0 * rm - 1.0);
    ok = ok && cubic < 1e-9 && quartic < 1e-9;
    worst = std::max({dz, cubic, quartic});
  } catch (const std::exception&) {
    ok = false;
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  report(1, "helicity-corrected circular orbit radii", ok,
         "worst residual " + fmt(worst) + ", " + fmt(dt) + " s");
}

void criterion_pinned_frequencies() {
  bool ok = true;
  double worst = 0.0;
  try {
    const OrbitResult iso =
        circular_orbit_isotropic(SchwarzschildParams{1.0, Chart::Isotropic}, 2);
    const OrbitResult st =
        circular_orbit_standard(SchwarzschildParams{1.0, Chart::Standard}, 2);
    const OrbitResult cl =
        classical_orbit(SchwarzschildParams{1.0, Chart::Standard}, 2.0);
    for (double d : {std::abs(iso.omega_sq_plus - 8.0 / 9.0),
                     std::abs(iso.omega_sq_minus - 8.0 / 27.0),
                     std::abs(st.omega_sq_plus - 32.0 / 81.0),
                     std::abs(cl.omega_sq_plus - 16.0 / 27.0)})
      worst = std::max(worst, d);
    ok = worst < 1e-12;
  } catch (const std::exception&) {
    ok = false;
  }
  report(2, "pinned orbit frequencies 8/9, 8/27, 32/81, 16/27", ok,
         "worst deviation " + fmt(worst));
}

void criterion_determinant() {
  bool ok = true;
  double worst_grid = 0.0, worst_value = 0.0;
  try {
    for (int i = 0; i < 50; ++i) {
      const double r = 1.1 + 0.18 * i;
      const double m = 2.0 + (i % 4);
      worst_grid = std::max(worst_grid, standard_determinant_check(r, 1.0, m).deviation);
    }
    ok = worst_grid < 1e-12;
    const OrbitResult st =
        circular_orbit_standard(SchwarzschildParams{1.0, Chart::Standard}, 2);
    worst_value = std::abs(st.omega_sq_plus - omega_sq_average(1.5, 1.0, 2.0));
    ok = ok && std::abs(st.omega_sq_plus - 32.0 / 81.0) < 1e-13 && worst_value < 1e-13;
  } catch (const std::exception&) {
    ok = false;
  }
  report(3, "determinant factorization over the (r, m) grid", ok,
         "grid " + fmt(worst_grid) + ", photon sphere " +
             fmt(worst_value));
}

void criterion_algebra() {
  const auto t0 = std::chrono::steady_clock::now();
  const CheckReport r = suite_algebra(2024, 1000);
  const double dt = seconds_since(t0);
  const bool ok = r.max_deviation() < 1e-12 && dt < 5.0;
  report(4, "matrix algebra identities, 1000 seeded samples", ok,
         "worst " + fmt(r.max_deviation()) + ", " + fmt(dt) + " s");
}

void criterion_polarization() {
  const CheckReport r = suite_polarization(2024, 1000);
  report(5, "polarization and mode-spinor identities, 1000 wave vectors",
         r.max_deviation() < 1e-13, "worst " + fmt(r.max_deviation()));
}

double two_grid_order(double coarse, double fine) { return std::log2(coarse / fine); }

void criterion_convergence() {
  const ModeCoefficients mc = paired_modes(61);
  double vac[2], med[2], delta[2];
  const int sizes[2] = {16, 32};
  for (int s = 0; s < 2; ++s) {
    const Grid g = unit_box(sizes[s]);
    const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, 0.2);
    const SpinorGridField dt = synthesize_field(mc, Representation::Standard, g, 0.2, 1);
    vac[s] = dirac_residual(f, dt);
    // homogeneous medium with index n: residual of i n d_t + i alpha . grad
    const double n_index = 1.5;
    const SpinorGridField fm =
        synthesize_field(mc, Representation::Standard, g, 0.2, 0, n_index);
    const SpinorGridField dtm =
        synthesize_field(mc, Representation::Standard, g, 0.2, 1, n_index);
    const MatrixSet& ms = build_matrices(fm.rep);
    std::array<SpinorGridField, 3> d = {spatial_derivative(fm, 0),
                                        spatial_derivative(fm, 1),
                                        spatial_derivative(fm, 2)};
    double res = 0.0;
    for (int nd = 0; nd < g.size(); ++nd) {
      CVec6 r = I * n_index * dtm.values[nd];
      for (int ax = 0; ax < 3; ++ax) r += I * (ms.alpha[ax] * d[ax].values[nd]);
      res = std::max(res, r.norm());
    }
    med[s] = res;
  }
  const int dsizes[2] = {10, 20};
  for (int s = 0; s < 2; ++s) {
    const Grid g = unit_box(dsizes[s]);
    const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, 0.2);
    const SpinorGridField dt = synthesize_field(mc, Representation::Standard, g, 0.2, 1);
    delta[s] = lorentz_invariance_certificate(f, dt).max_delta;
  }
  const double o_vac = two_grid_order(vac[0], vac[1]);
  const double o_med = two_grid_order(med[0], med[1]);
  const double o_delta = two_grid_order(delta[0], delta[1]);
  bool ok = true;
  for (double o : {o_vac, o_med, o_delta}) ok = ok && o > 1.8 && o < 2.2;
  report(6, "second-order convergence of the discretized residuals", ok,
         "orders " + fmt(o_vac) + ", " + fmt(o_delta) + ", " +
             fmt(o_med));
}

void criterion_connection() {
  double worst = 0.0;
  bool ok = true;
  try {
    for (Chart chart : {Chart::Standard, Chart::Isotropic}) {
      const DiagonalMetric m = schwarzschild_metric(SchwarzschildParams{1.0, chart});
      Rng rng(62);
      for (int i = 0; i < 100; ++i) {
        Vec4 x;
        if (chart == Chart::Standard)
          x = Vec4(rng.uniform(-1, 1), rng.uniform(1.05, 10.0),
                   rng.uniform(0.3, M_PI - 0.3), rng.uniform(0.0, 2.0 * M_PI));
        else {
          x = Vec4(rng.uniform(-1, 1), rng.uniform(-5, 5), rng.uniform(-5, 5),
                   rng.uniform(-5, 5));
          if (x.tail<3>().norm() < 0.3) x(1) += 1.0;
        }
        worst = std::max(worst, connection_check(m, x).max_deviation());
      }
    }
    ok = worst < 1e-11;
  } catch (const std::exception&) {
    ok = false;
  }
  report(7, "spin connection against the frame-commutator oracle, both charts", ok,
         "worst relative deviation " + fmt(worst));
}

void criterion_discrete_symmetries() {
  const ModeCoefficients mc = paired_modes(63);
  const Grid g = unit_box(10);
  const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, 0.3);
  const SpinorGridField dt = synthesize_field(mc, Representation::Standard, g, 0.3, 1);
  const SpinorGridField cf = charge_conjugation(f);
  double cdev = 0.0;
  for (std::size_t n = 0; n < f.values.size(); ++n)
    cdev = std::max(cdev, max_abs(CVec6(cf.values[n] - f.values[n])));
  const double r0 = dirac_residual(f, dt);
  const double chiral_dev =
      std::abs(r0 - dirac_residual(chiral_transform(f, 0.7), chiral_transform(dt, 0.7)));
  const double axial = axial_current_max(f);
  const bool ok = cdev < 1e-15 && chiral_dev < 1e-12 && axial < 1e-14;
  report(8, "charge conjugation, chiral invariance, axial current", ok,
         "C " + fmt(cdev) + ", chiral " + fmt(chiral_dev) +
             ", axial " + fmt(axial));
}

void criterion_medium() {
  const CheckReport r = suite_medium(2024, 8);
  bool ok = r.max_deviation() < 1e-11;
  bool spin_orbit_zero = false;
  for (const auto& rec : r.records)
    if (rec.name == "spin-orbit terms vanish (homogeneous)")
      spin_orbit_zero = rec.deviation == 0.0;
  ok = ok && spin_orbit_zero;
  report(9, "linear-medium operator identities and homogeneous spin-orbit limit", ok,
         "worst " + fmt(r.max_deviation()) + ", homogeneous spin-orbit " +
             (spin_orbit_zero ? std::string("0") : std::string("nonzero")));
}

}  // namespace

int main() {
  criterion_orbit_radii();
  criterion_pinned_frequencies();
  criterion_determinant();
  criterion_algebra();
  criterion_polarization();
  criterion_convergence();
  criterion_connection();
  criterion_discrete_symmetries();
  criterion_medium();
  if (failures != 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
