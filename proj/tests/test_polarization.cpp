#include <catch2/catch_amalgamated.hpp>

#include "photospin/polarization.hpp"

using namespace photospin;

TEST_CASE("identity suite over random and degenerate wave vectors") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const WaveVector kv{rng.nondegenerate_k()};
    const CheckReport r = polarization_identity_suite(kv);
    INFO("k = " << kv.k.transpose());
    REQUIRE(r.max_deviation() < 1e-13);
  }
  for (double kz : {2.0, -3.0, 1e-9}) {
    const CheckReport r = polarization_identity_suite(WaveVector{Vec3(0, 0, kz)});
    INFO("kz = " << kz);
    REQUIRE(r.max_deviation() < 1e-13);
  }
}

TEST_CASE("degenerate-axis convention") {
  Vec3 e1, e2, e3;
  linear_basis(WaveVector{Vec3(0, 0, 2)}, e1, e2, e3);
  REQUIRE((e1 - Vec3(1, 0, 0)).norm() == 0.0);
  REQUIRE((e2 - Vec3(0, 1, 0)).norm() == 0.0);
  REQUIRE((e3 - Vec3(0, 0, 1)).norm() == 0.0);
  linear_basis(WaveVector{Vec3(0, 0, -3)}, e1, e2, e3);
  REQUIRE((e1 - Vec3(-1, 0, 0)).norm() == 0.0);
  REQUIRE((e2 - Vec3(0, 1, 0)).norm() == 0.0);
  REQUIRE((e3 - Vec3(0, 0, -1)).norm() == 0.0);
}

TEST_CASE("linear basis is a right-handed orthonormal triad") {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 e1, e2, e3;
    linear_basis(WaveVector{rng.nondegenerate_k()}, e1, e2, e3);
    REQUIRE(std::abs(e1.norm() - 1.0) < 1e-14);
    REQUIRE(std::abs(e2.norm() - 1.0) < 1e-14);
    REQUIRE(std::abs(e1.dot(e2)) < 1e-14);
    REQUIRE((e1.cross(e2) - e3).norm() < 1e-13);
  }
}

TEST_CASE("circular vectors are helicity eigenvectors of k-hat . tau") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const WaveVector kv{rng.nondegenerate_k()};
    const PolBasis b = circular_basis(kv);
    const Mat3 kt = tau_dot(Vec3(kv.k / kv.omega()));
    REQUIRE(max_abs(CVec3(kt * b.e_plus - b.e_plus)) < 1e-13);
    REQUIRE(max_abs(CVec3(kt * b.e_minus + b.e_minus)) < 1e-13);
    REQUIRE(max_abs(CVec3(kt * b.e_zero)) < 1e-13);
  }
}

TEST_CASE("mode spinor reflection relations at k1 = 0") {
  for (const Vec3& k : {Vec3(0, 2, 3), Vec3(0, -1.5, 0.5), Vec3(0, 3, -4)}) {
    const ModeSpinor mp = mode_spinors(WaveVector{k});
    const ModeSpinor mm = mode_spinors(WaveVector{Vec3(-k)});
    REQUIRE(max_abs(CVec6(mm.f1 - mp.f1.conjugate())) < 1e-14);
    REQUIRE(max_abs(CVec6(mm.f2 + mp.f2.conjugate())) < 1e-14);
  }
}

TEST_CASE("mode spinors are unit vectors related by the basis change") {
  Rng rng(8);
  const Mat6& U = basis_change();
  for (int trial = 0; trial < 100; ++trial) {
    const WaveVector kv{rng.nondegenerate_k()};
    const ModeSpinor m = mode_spinors(kv);
    for (const CVec6* v : {&m.f1, &m.f2, &m.g1, &m.g2})
      REQUIRE(std::abs(v->norm() - 1.0) < 1e-13);
    REQUIRE(max_abs(CVec6(m.g1 - U * m.f1)) < 1e-13);
    REQUIRE(max_abs(CVec6(m.g2 - U * m.f2)) < 1e-13);
  }
}

TEST_CASE("zero wave vector is rejected") {
  Vec3 e1, e2, e3;
  REQUIRE_THROWS_AS(linear_basis(WaveVector{Vec3::Zero()}, e1, e2, e3), ZeroWaveVector);
  REQUIRE_THROWS_AS(mode_spinors(WaveVector{Vec3::Zero()}), ZeroWaveVector);
}
