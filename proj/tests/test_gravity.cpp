#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "photospin/gravity.hpp"
#include "photospin/suites.hpp"

using namespace photospin;

TEST_CASE("connection coefficients match the frame-commutator oracle") {
  for (Chart chart : {Chart::Standard, Chart::Isotropic}) {
    const SchwarzschildParams p{1.0, chart};
    const DiagonalMetric m = schwarzschild_metric(p);
    Rng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
      Vec4 x;
      if (chart == Chart::Standard)
        x = Vec4(rng.uniform(-1, 1), rng.uniform(1.05, 10.0),
                 rng.uniform(0.3, M_PI - 0.3), rng.uniform(0.0, 2.0 * M_PI));
      else {
        x = Vec4(rng.uniform(-1, 1), rng.uniform(-5, 5), rng.uniform(-5, 5),
                 rng.uniform(-5, 5));
        if (x.tail<3>().norm() < 0.3) x(1) += 1.0;
      }
      const CheckReport r = connection_check(m, x);
      for (const auto& rec : r.records) {
        INFO(rec.name << " at x = " << x.transpose());
        REQUIRE(rec.deviation < 1e-11);
      }
    }
  }
}

TEST_CASE("flat spacetime has a vanishing connection") {
  const ConnectionData cd = connection_coefficients(DiagonalMetric::minkowski(),
                                                    Vec4(0.3, 1.0, 2.0, -1.0));
  REQUIRE(cd.max_abs_entry() == 0.0);
}

TEST_CASE("the three covariant operator forms agree") {
  const SchwarzschildParams ps{1.0, Chart::Standard}, pi{1.0, Chart::Isotropic};
  Rng rng(52);
  for (int trial = 0; trial < 5; ++trial) {
    const Vec4 xs(rng.uniform(-1, 1), rng.uniform(1.1, 8.0),
                  rng.uniform(0.4, M_PI - 0.4), rng.uniform(0.0, 2.0 * M_PI));
    const Vec4 xi(rng.uniform(-1, 1), rng.uniform(1.0, 4.0), rng.uniform(1.0, 4.0),
                  rng.uniform(1.0, 4.0));
    const SpinorJet psi = random_spinor_jet(rng);
    for (Representation rep : {Representation::Chiral, Representation::Standard}) {
      REQUIRE(curved_operator_check(schwarzschild_metric(ps), rep, xs, psi)
                  .max_deviation() < 1e-11);
      REQUIRE(curved_operator_check(schwarzschild_metric(pi), rep, xi, psi)
                  .max_deviation() < 1e-11);
    }
    REQUIRE(schwarzschild_operator_check(ps, xs, psi).max_deviation() < 1e-11);
    REQUIRE(schwarzschild_operator_check(pi, xi, psi).max_deviation() < 1e-11);
  }
}

TEST_CASE("classical circular photon orbit") {
  for (double rs : {1.0, 2.0, 10.0}) {
    const OrbitResult r = classical_orbit(SchwarzschildParams{rs, Chart::Standard}, 2.0);
    REQUIRE(std::abs(r.radius - 1.5 * rs) < 1e-12 * rs);
    REQUIRE(std::abs(r.omega_sq_plus - (16.0 / 27.0) * 4.0 / (rs * rs) / 4.0) <
            1e-12 / (rs * rs));
    REQUIRE(r.diagnostics.residual < 1e-12);
  }
  // omega^2 = 4 h^2 / 27 rs^2 at the potential maximum
  const OrbitResult r = classical_orbit(SchwarzschildParams{1.0, Chart::Standard}, 3.0);
  REQUIRE(std::abs(r.omega_sq_plus - 4.0 * 9.0 / 27.0) < 1e-11);
}

TEST_CASE("determinant factorization against the closed cubic") {
  for (int i = 0; i < 50; ++i) {
    const double r = 1.1 + 0.18 * i;
    const double m = 2.0 + (i % 4);
    const DeterminantCheck d = standard_determinant_check(r, 1.0, m);
    INFO("r = " << r << " m = " << m);
    REQUIRE(d.deviation < 1e-12);
  }
}

TEST_CASE("spin-averaged frequency at the photon sphere") {
  const OrbitResult st = circular_orbit_standard(SchwarzschildParams{1.0, Chart::Standard}, 2);
  REQUIRE(std::abs(st.radius - 1.5) < 1e-12);
  REQUIRE(std::abs(st.omega_sq_plus - 32.0 / 81.0) < 1e-13);
  REQUIRE(std::abs(st.omega_sq_minus - 32.0 / 81.0) < 1e-13);
}

TEST_CASE("helicity-split levels in the isotropic chart") {
  const SchwarzschildParams p{1.0, Chart::Isotropic};
  const OrbitResult iso = circular_orbit_isotropic(p, 2);
  REQUIRE(std::abs(iso.radius - (2.0 + std::sqrt(3.0)) / 4.0) < 1e-12);
  REQUIRE(std::abs(iso.omega_sq_plus - 8.0 / 9.0) < 1e-12);
  REQUIRE(std::abs(iso.omega_sq_minus - 8.0 / 27.0) < 1e-12);
  // the split average reproduces the uncorrected frequency
  REQUIRE(std::abs(0.5 * (iso.omega_sq_plus + iso.omega_sq_minus) - 16.0 / 27.0) < 1e-12);
  // the uncorrected isotropic radius maps to the standard photon sphere
  REQUIRE(std::abs(areal_radius(iso.radius, 1.0) - 1.5) < 1e-12);
}

TEST_CASE("helicity-corrected orbit radii and scaling in rs") {
  for (double rs : {1.0, 2.0}) {
    const HelicityRadii hr = helicity_split_radii(SchwarzschildParams{rs, Chart::Isotropic}, 2.0);
    REQUIRE(std::abs(hr.rho_zero - rs * (2.0 + std::sqrt(3.0)) / 4.0) < 1e-12 * rs);
    REQUIRE(std::abs(hr.rho_plus / rs - 1.2954858340) < 1e-3);
    REQUIRE(std::abs(hr.rho_minus / rs - 0.7838375145) < 1e-3);
    const double rp = hr.rho_plus / rs, rm = hr.rho_minus / rs;
    REQUIRE(std::abs(64.0 * rp * rp * rp - 112.0 * rp * rp + 40.0 * rp - 3.0) < 1e-9);
    REQUIRE(std::abs(128.0 * rm * rm * rm * rm - 32.0 * rm * rm * rm -
                     80.0 * rm * rm + 22.0 * rm - 1.0) < 1e-9);
  }
}

TEST_CASE("extremal radius average for the shifted potential") {
  // h = 2: 3/4 + sqrt(105)/12
  const double expect = 0.75 + std::sqrt(105.0) / 12.0;
  REQUIRE(std::abs(extremal_radius_average(1.0, 2.0) - expect) < 1e-12);
  REQUIRE(std::abs(extremal_radius_average(2.0, 2.0) - 2.0 * expect) < 1e-12);
}

TEST_CASE("domain violations are reported") {
  REQUIRE_THROWS_AS(helicity_split_radii(SchwarzschildParams{1.0, Chart::Isotropic}, 1.0),
                    InvalidAngularMomentum);
  REQUIRE_THROWS_AS(extremal_radius_average(1.0, 0.5), InvalidAngularMomentum);
  REQUIRE_THROWS_AS(circular_orbit_standard(SchwarzschildParams{1.0, Chart::Standard}, 1),
                    InvalidAngularMomentum);
  REQUIRE_THROWS_AS(standard_determinant_check(0.9, 1.0, 2.0), DomainViolation);
  REQUIRE_THROWS_AS(isotropic_a_rho(0.2, 1.0), DomainViolation);
  REQUIRE_THROWS_AS(schwarzschild_metric(SchwarzschildParams{-1.0, Chart::Standard}),
                    DomainViolation);
  const DiagonalMetric m = schwarzschild_metric(SchwarzschildParams{1.0, Chart::Standard});
  REQUIRE_THROWS_AS(m.sample(Vec4(0.0, 0.5, 1.0, 1.0)), DomainViolation);
}

TEST_CASE("stationary-point search reports an unbracketed maximum") {
  OrbitDiagnostics diag;
  REQUIRE_THROWS_AS(
      find_stationary_max([](const Jet2d& rho) { return rho; }, 1.0, 5.0, 1e-12, &diag),
      RootNotBracketed);
}
