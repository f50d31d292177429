#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "photospin/symmetry.hpp"

using namespace photospin;

namespace {

Grid unit_box(int n) {
  Grid g;
  g.dims = {n, n, n};
  g.spacing = Vec3::Ones() / n;
  return g;
}

ModeCoefficients paired_modes(unsigned long long seed) {
  Rng rng(seed);
  ModeCoefficients mc;
  // k1 = 0 keeps the coefficient-space parity/time-reversal actions exact.
  mc.entries.push_back({2.0 * M_PI * Vec3(0, 1, 2), 1,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  mc.entries.push_back({2.0 * M_PI * Vec3(0, 1, 2), 2,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  return mc;
}

double field_dev(const SpinorGridField& a, const SpinorGridField& b) {
  double d = 0.0;
  for (std::size_t n = 0; n < a.values.size(); ++n)
    d = std::max(d, max_abs(CVec6(a.values[n] - b.values[n])));
  return d;
}

}  // namespace

TEST_CASE("grid actions of P and T match the coefficient actions") {
  const ModeCoefficients mc = paired_modes(31);
  const Grid g = unit_box(10);
  const double t = 0.23;
  const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, t);
  REQUIRE(field_dev(parity(f), synthesize_field(parity(mc), f.rep, g, t)) < 1e-13);
  REQUIRE(field_dev(time_reversal(f),
                    synthesize_field(time_reversal(mc), f.rep, g, -t)) < 1e-13);
}

TEST_CASE("charge conjugation fixes fields built from real E and H") {
  const SpinorGridField f = synthesize_field(paired_modes(32), Representation::Standard,
                                             unit_box(10), 0.4);
  REQUIRE(field_dev(charge_conjugation(f), f) < 1e-15);
  const SpinorGridField fc = synthesize_field(paired_modes(32), Representation::Chiral,
                                              unit_box(10), 0.4);
  REQUIRE(field_dev(charge_conjugation(fc), fc) < 1e-15);
}

TEST_CASE("chiral transformations preserve the equation residual") {
  const ModeCoefficients mc = paired_modes(33);
  const Grid g = unit_box(10);
  const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, 0.1);
  const SpinorGridField dt = synthesize_field(mc, Representation::Standard, g, 0.1, 1);
  const double r0 = dirac_residual(f, dt);
  for (double theta : {0.3, 0.7, 1.9}) {
    const double r1 = dirac_residual(chiral_transform(f, theta),
                                     chiral_transform(dt, theta));
    REQUIRE(std::abs(r0 - r1) < 1e-12 * std::max(1.0, r0));
  }
}

TEST_CASE("quarter-turn chiral rotation maps (E, H) to (-H, E)") {
  const SpinorGridField f = synthesize_field(paired_modes(34), Representation::Standard,
                                             unit_box(10), 0.15);
  const SpinorGridField cf = chiral_transform(f, M_PI / 2.0);
  double dev = 0.0;
  for (std::size_t n = 0; n < f.values.size(); ++n) {
    CVec3 E, H, Ec, Hc;
    extract_sample(f.values[n], f.rep, E, H);
    extract_sample(cf.values[n], cf.rep, Ec, Hc);
    dev = std::max({dev, max_abs(CVec3(Ec + H)), max_abs(CVec3(Hc - E))});
  }
  REQUIRE(dev < 1e-14);
}

TEST_CASE("axial current vanishes identically on real fields") {
  for (Representation rep : {Representation::Chiral, Representation::Standard}) {
    const SpinorGridField f = synthesize_field(paired_modes(35), rep, unit_box(10), 0.3);
    REQUIRE(axial_current_max(f) < 1e-14);
  }
}

TEST_CASE("spatial bracket identity is an exact matrix identity") {
  REQUIRE(invariance_bracket_identity(Representation::Chiral) < 1e-12);
  REQUIRE(invariance_bracket_identity(Representation::Standard) < 1e-12);
}

TEST_CASE("invariance certificate converges at stencil order") {
  const ModeCoefficients mc = paired_modes(36);
  double delta_coarse = 0.0, delta_fine = 0.0;
  double curl_coarse = 0.0, curl_fine = 0.0;
  for (int n : {10, 20}) {
    const Grid g = unit_box(n);
    const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, 0.2);
    const SpinorGridField dt = synthesize_field(mc, Representation::Standard, g, 0.2, 1);
    const InvarianceCertificate c = lorentz_invariance_certificate(f, dt);
    (n == 10 ? delta_coarse : delta_fine) = c.max_delta;
    (n == 10 ? curl_coarse : curl_fine) = c.curl_relation;
  }
  const double delta_order = std::log2(delta_coarse / delta_fine);
  const double curl_order = std::log2(curl_coarse / curl_fine);
  INFO("delta order " << delta_order << " curl order " << curl_order);
  REQUIRE(delta_order > 1.5);
  REQUIRE(delta_order < 2.5);
  REQUIRE(curl_order > 1.5);
}

TEST_CASE("longitudinal input is rejected by the certificate") {
  const Grid g = unit_box(10);
  // E along k: div E != 0 at the gradient scale.
  std::vector<CVec3> E(static_cast<std::size_t>(g.size())), H(E.size());
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const Vec3 x = g.point(i, j, k);
        const double phase = 2.0 * M_PI * (x(0) + 2.0 * x(2));
        E[static_cast<std::size_t>(g.index(i, j, k))] =
            std::cos(phase) * Vec3(1, 0, 2).normalized().cast<Complex>();
        H[static_cast<std::size_t>(g.index(i, j, k))] = CVec3::Zero();
      }
  const SpinorGridField f = assemble_spinor(E, H, g, Representation::Standard);
  REQUIRE_THROWS_AS(lorentz_invariance_certificate(f, f), NonTransverseInput);
}

TEST_CASE("reflection requires a grid closed under x -> -x") {
  Grid g = unit_box(10);
  g.periodic = false;
  g.origin = Vec3(0.1, 0.0, 0.0);  // even dims, not centered
  const SpinorGridField f = make_field(g, Representation::Standard);
  REQUIRE_THROWS_AS(parity(f), AsymmetricGrid);
}
