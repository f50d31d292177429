#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "photospin/medium.hpp"
#include "photospin/suites.hpp"

using namespace photospin;

namespace {

MediumProfile smooth_profile() {
  return {[](const Vec4& x) {
            const Jet2d t = Jet2d::variable(x(0), 0), x1 = Jet2d::variable(x(1), 1),
                        x2 = Jet2d::variable(x(2), 2), x3 = Jet2d::variable(x(3), 3);
            return exp(0.3 * x1 + 0.15 * sin(x2) + 0.04 * t * x3);
          },
          [](const Vec4& x) {
            const Jet2d t = Jet2d::variable(x(0), 0), x1 = Jet2d::variable(x(1), 1),
                        x2 = Jet2d::variable(x(2), 2), x3 = Jet2d::variable(x(3), 3);
            return exp(0.2 * x3 + 0.1 * cos(x1 - x2) - 0.05 * t * t);
          }};
}

// eps_r = mu_r = exp(2 c x1): chi = eta = (c, 0, 0), static.
MediumProfile impedance_matched(double c) {
  return {[c](const Vec4& x) { return exp(2.0 * c * Jet2d::variable(x(1), 1)); },
          [c](const Vec4& x) { return exp(2.0 * c * Jet2d::variable(x(1), 1)); }};
}

SpinorJet plane_envelope(const CVec6& v, double omega, const Vec3& k) {
  SpinorJet p;
  for (int c = 0; c < 6; ++c) {
    Jet2c phase = Complex(-omega) * Jet2c::variable(Complex(0.0), 0);
    for (int l = 0; l < 3; ++l)
      phase = phase + Complex(k(l)) * Jet2c::variable(Complex(0.0), l + 1);
    p[static_cast<std::size_t>(c)] = v(c) * exp(phase * I);
  }
  return p;
}

}  // namespace

TEST_CASE("operator identities hold on an inhomogeneous time-dependent medium") {
  const MediumProfile prof = smooth_profile();
  Rng rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    const Vec4 x(rng.uniform(-0.5, 0.5), rng.uniform(-1, 1), rng.uniform(-1, 1),
                 rng.uniform(-1, 1));
    const CheckReport r = medium_second_order_check(prof, x, random_spinor_jet(rng));
    for (const auto& rec : r.records) {
      INFO(rec.name);
      REQUIRE(rec.deviation < 1e-11);
    }
  }
}

TEST_CASE("spin-orbit terms vanish exactly in a homogeneous medium") {
  const MediumProfile hom = MediumProfile::homogeneous(2.25, 1.1);
  Rng rng(42);
  const CheckReport r = medium_second_order_check(hom, Vec4(0.1, 0.2, -0.3, 0.4),
                                                  random_spinor_jet(rng));
  bool found = false;
  for (const auto& rec : r.records)
    if (rec.name == "spin-orbit terms vanish (homogeneous)") {
      found = true;
      REQUIRE(rec.deviation == 0.0);
    }
  REQUIRE(found);
  REQUIRE(r.max_deviation() < 1e-11);
}

TEST_CASE("envelope reduction dropped terms match the analytic formula") {
  const double c = 0.1;  // chi = (0.1, 0, 0), m_eff = 0.1
  const MediumProfile prof = impedance_matched(c);
  const Vec4 x(0.0, 0.3, 0.0, 0.0);
  Rng rng(43);
  const CVec6 v = rng.cvec6();
  const double omega = 4e-4;
  const SpinorJet psi = plane_envelope(v, omega, Vec3(2e-4, 0, 0));
  const EnvelopeResult res = envelope_reduction(prof, x, psi);
  REQUIRE(res.m_eff == Catch::Approx(c).epsilon(1e-12));

  // dropped = n^2 d_t^2 psi' - 2 (alpha.chi) n d_t psi', over 2 m.
  const double n = std::exp(2.0 * c * x(1));
  const MatrixSet& ms = build_matrices(Representation::Standard);
  const CVec6 dt = -I * omega * v;
  const CVec6 dt2 = -omega * omega * v;
  CVec6 expect = n * n * dt2;
  expect -= 2.0 * c * n * (ms.alpha[0] * dt);
  REQUIRE(std::abs(res.dropped_terms - max_abs(expect) / (2.0 * res.m_eff)) < 1e-15);

  // SVEA ratio max(|d_t|, |d_t^2|) / (|psi'| m / n), attained on one component.
  const double expect_ratio = std::max(omega, omega * omega) * n / c;
  REQUIRE(std::abs(res.svea_ratio - expect_ratio) < 1e-12);
}

TEST_CASE("envelope reduction rejects out-of-domain inputs") {
  Rng rng(44);
  const SpinorJet psi = plane_envelope(rng.cvec6(), 1e-4, Vec3::Zero());
  const Vec4 x(0.0, 0.3, 0.1, -0.2);
  // chi != eta
  const MediumProfile mismatched{
      [](const Vec4& xx) { return exp(0.4 * Jet2d::variable(xx(1), 1)); },
      [](const Vec4&) { return Jet2d(1.0); }};
  REQUIRE_THROWS_AS(envelope_reduction(mismatched, x, psi), DomainViolation);
  // homogeneous: effective mass vanishes
  REQUIRE_THROWS_AS(envelope_reduction(MediumProfile::homogeneous(2.0, 2.0), x, psi),
                    DegenerateMass);
  // fast envelope
  const SpinorJet fast = plane_envelope(rng.cvec6(), 1.0, Vec3::Zero());
  REQUIRE_THROWS_AS(envelope_reduction(impedance_matched(0.1), x, fast), SVEAViolated);
}

TEST_CASE("non-positive material parameters are rejected") {
  const MediumProfile bad{[](const Vec4&) { return Jet2d(-1.0); },
                          [](const Vec4&) { return Jet2d(1.0); }};
  Rng rng(45);
  REQUIRE_THROWS_AS(
      medium_second_order_check(bad, Vec4::Zero(), random_spinor_jet(rng)),
      NonPositiveMedium);
}

TEST_CASE("homogeneous-medium waves satisfy the scaled equation to stencil order") {
  const double n_index = 1.5;
  ModeCoefficients mc;
  mc.entries.push_back({2.0 * M_PI * Vec3(1, 0, 2), 1, Complex(0.4, -0.7)});
  mc.entries.push_back({2.0 * M_PI * Vec3(0, 2, 1), 2, Complex(-0.3, 0.5)});
  double res_coarse = 0.0, res_fine = 0.0;
  for (int nn : {16, 32}) {
    Grid g;
    g.dims = {nn, nn, nn};
    g.spacing = Vec3::Ones() / nn;
    const SpinorGridField f =
        synthesize_field(mc, Representation::Standard, g, 0.2, 0, n_index);
    const SpinorGridField dt =
        synthesize_field(mc, Representation::Standard, g, 0.2, 1, n_index);
    const MatrixSet& ms = build_matrices(f.rep);
    std::array<SpinorGridField, 3> d = {spatial_derivative(f, 0),
                                        spatial_derivative(f, 1),
                                        spatial_derivative(f, 2)};
    double res = 0.0;
    for (int nd = 0; nd < g.size(); ++nd) {
      CVec6 r = I * n_index * dt.values[nd];
      for (int ax = 0; ax < 3; ++ax) r += I * (ms.alpha[ax] * d[ax].values[nd]);
      res = std::max(res, r.norm());
    }
    (nn == 16 ? res_coarse : res_fine) = res;
  }
  const double order = std::log2(res_coarse / res_fine);
  INFO("order " << order);
  REQUIRE(order > 1.8);
  REQUIRE(order < 2.2);
}
