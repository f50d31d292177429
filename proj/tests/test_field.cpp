#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "photospin/field.hpp"
#include "photospin/io.hpp"

using namespace photospin;

namespace {

Grid unit_box(int n) {
  Grid g;
  g.dims = {n, n, n};
  g.spacing = Vec3::Ones() / n;
  return g;
}

ModeCoefficients sample_modes(unsigned long long seed) {
  Rng rng(seed);
  ModeCoefficients mc;
  mc.entries.push_back({2.0 * M_PI * Vec3(1, 0, 2), 1,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  mc.entries.push_back({2.0 * M_PI * Vec3(0, 2, 1), 2,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  mc.entries.push_back({2.0 * M_PI * Vec3(-1, 1, 0), 1,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  return mc;
}

}  // namespace

TEST_CASE("determinant of the symbol matches the closed-form dispersion") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial)
    for (Representation rep : {Representation::Chiral, Representation::Standard}) {
      const DispersionResult d = dispersion_roots(WaveVector{rng.nondegenerate_k()}, rep);
      REQUIRE(d.closed_form_deviation < 1e-12);
      REQUIRE(d.omega_sq_roots.size() == 2);
    }
}

TEST_CASE("box quadrature energy equals the coefficient-space sum") {
  const ModeCoefficients mc = sample_modes(21);
  for (Representation rep : {Representation::Chiral, Representation::Standard}) {
    const Grid g = unit_box(12);
    const SpinorGridField f = synthesize_field(mc, rep, g, 0.13);
    const double direct = observables(f).J0;
    const double parseval = mode_energy(mc, g);
    REQUIRE(std::abs(direct - parseval) < 1e-12 * std::max(1.0, parseval));
  }
}

TEST_CASE("synthesized fields solve the first-order system to stencil order") {
  const ModeCoefficients mc = sample_modes(22);
  double res_coarse = 0.0, res_fine = 0.0;
  for (int n : {16, 32}) {
    const Grid g = unit_box(n);
    const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, 0.2);
    const SpinorGridField dt = synthesize_field(mc, Representation::Standard, g, 0.2, 1);
    (n == 16 ? res_coarse : res_fine) = dirac_residual(f, dt);
  }
  const double order = std::log2(res_coarse / res_fine);
  INFO("coarse " << res_coarse << " fine " << res_fine << " order " << order);
  REQUIRE(order > 1.8);
  REQUIRE(order < 2.2);
}

TEST_CASE("residual is invariant under the unitary representation change") {
  const ModeCoefficients mc = sample_modes(23);
  const Grid g = unit_box(14);
  const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, 0.1);
  const SpinorGridField dt = synthesize_field(mc, Representation::Standard, g, 0.1, 1);
  const double r0 = dirac_residual(f, dt);
  const double r1 = dirac_residual(convert_representation(f, Representation::Chiral),
                                   convert_representation(dt, Representation::Chiral));
  REQUIRE(std::abs(r0 - r1) < 1e-12 * std::max(1.0, r0));
}

TEST_CASE("circular amplitude conversion round-trips") {
  Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex b1(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Complex b2(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const auto [ap, am] = ModeCoefficients::circular(b1, b2);
    const auto [c1, c2] = ModeCoefficients::linear_from_circular(ap, am);
    REQUIRE(std::abs(c1 - b1) < 1e-14);
    REQUIRE(std::abs(c2 - b2) < 1e-14);
  }
}

TEST_CASE("invalid synthesis inputs are rejected") {
  const Grid g = unit_box(8);
  ModeCoefficients bad;
  bad.entries.push_back({Vec3(1.0, 0.0, 0.0), 1, Complex(1.0, 0.0)});  // not 2 pi n / L
  REQUIRE_THROWS_AS(synthesize_field(bad, Representation::Standard, g, 0.0),
                    IncommensurateMode);
  ModeCoefficients zero;
  zero.entries.push_back({Vec3::Zero(), 1, Complex(1.0, 0.0)});
  REQUIRE_THROWS_AS(synthesize_field(zero, Representation::Standard, g, 0.0),
                    ZeroWaveVector);
  const SpinorGridField f = synthesize_field(sample_modes(25), Representation::Standard,
                                             g, 0.0);
  const SpinorGridField other = synthesize_field(sample_modes(25),
                                                 Representation::Standard, unit_box(10), 0.0);
  REQUIRE_THROWS_AS(dirac_residual(f, other), GridMismatch);
}

TEST_CASE("binary grid files round-trip exactly") {
  const Grid g = unit_box(8);
  const SpinorGridField f = synthesize_field(sample_modes(26), Representation::Chiral, g,
                                             0.37);
  const std::string path = "field_roundtrip_test.psgf";
  write_grid_binary(path, f);
  const SpinorGridField back = read_grid_binary(path);
  REQUIRE(back.rep == f.rep);
  REQUIRE(back.time == f.time);
  REQUIRE(back.grid.same_layout(f.grid));
  double dev = 0.0;
  for (int n = 0; n < g.size(); ++n)
    dev = std::max(dev, max_abs(CVec6(back.values[n] - f.values[n])));
  REQUIRE(dev == 0.0);
  std::remove(path.c_str());
}
