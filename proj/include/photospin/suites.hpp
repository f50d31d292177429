#ifndef PHOTOSPIN_SUITES_HPP
#define PHOTOSPIN_SUITES_HPP

#include <algorithm>
#include <cstdlib>
#include <map>
#include <thread>
#include <vector>

#include "photospin/field.hpp"
#include "photospin/gravity.hpp"
#include "photospin/medium.hpp"
#include "photospin/polarization.hpp"
#include "photospin/symmetry.hpp"

namespace photospin {

// Parallelism cap: hardware concurrency, optionally reduced by the
// PHOTON_SPINOR_THREADS environment variable.
inline int thread_budget() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("PHOTON_SPINOR_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

// Deterministic parallel sweep: results are reduced in index order, so the
// outcome does not depend on the thread count.
template <typename Fn>
inline CheckReport parallel_sweep(int count, const Fn& fn) {
  const int threads = std::max(1, std::min(thread_budget(), count));
  std::vector<CheckReport> partial(static_cast<std::size_t>(count));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) partial[static_cast<std::size_t>(i)] = fn(i);
    });
  for (auto& th : pool) th.join();
  CheckReport merged;
  for (const CheckReport& p : partial) merged.merge(p);
  return merged;
}

// Collapse repeated record names to their worst deviation, keeping first-seen
// order.
inline CheckReport collapse_worst(const CheckReport& in) {
  CheckReport out;
  std::map<std::string, std::size_t> seen;
  for (const CheckRecord& r : in.records) {
    auto it = seen.find(r.name);
    if (it == seen.end()) {
      seen[r.name] = out.records.size();
      out.add(r.name, r.deviation);
    } else {
      out.records[it->second].deviation =
          std::max(out.records[it->second].deviation, r.deviation);
    }
  }
  return out;
}

// A six-component analytic sample built from a few complex exponentials.
inline SpinorJet random_spinor_jet(Rng& rng) {
  SpinorJet p;
  for (int c = 0; c < 6; ++c) {
    Jet2c acc;
    for (int term = 0; term < 2; ++term) {
      Jet2c phase;
      for (int a = 0; a < 4; ++a)
        phase = phase + Complex(rng.uniform(-1.5, 1.5)) * Jet2c::variable(Complex(0.0), a);
      acc = acc + Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * exp(phase * I);
    }
    p[static_cast<std::size_t>(c)] = acc;
  }
  return p;
}

inline CheckReport suite_algebra(unsigned long long seed, int samples = 200) {
  CheckReport rep = parallel_sweep(samples, [&](int i) {
    Rng rng(seed + static_cast<unsigned long long>(i));
    CheckReport r;
    for (Representation rp : {Representation::Chiral, Representation::Standard})
      r.merge(product_identities_check(rng.cvec4(), rng.cvec4(), rp));
    // finite boost/rotation leaves psi-bar psi invariant
    const LorentzParams p{rng.vec3(), rng.vec3()};
    r.add("scalar invariance of the bilinear form",
          std::max(scalar_invariance_check(Representation::Chiral, p),
                   scalar_invariance_check(Representation::Standard, p)));
    // closed-form rotation generator exponential is a representation change
    const Mat6 LC = lorentz_rep(Representation::Chiral, p);
    const Mat6 LS = lorentz_rep(Representation::Standard, p);
    const Mat6 U = basis_change();
    r.add("transformations intertwine the bases", max_abs(Mat6(LS - U * LC * U)));
    return collapse_worst(r);
  });
  rep.merge(generator_algebra_check());
  const Mat6 U = basis_change();
  rep.add("basis change involutive", max_abs(Mat6(U * U - Mat6::Identity())));
  return collapse_worst(rep);
}

inline CheckReport suite_polarization(unsigned long long seed, int samples = 300) {
  CheckReport rep = parallel_sweep(samples + 3, [&](int i) {
    Vec3 k;
    if (i >= samples) {
      k = Vec3::Zero();
      k(2) = (i - samples == 0) ? 2.0 : -3.0;
      if (i - samples == 2) k(2) = 1e-9;
    } else {
      Rng rng(seed + static_cast<unsigned long long>(i));
      k = rng.nondegenerate_k();
    }
    return collapse_worst(polarization_identity_suite(WaveVector{k}));
  });
  return collapse_worst(rep);
}

inline CheckReport suite_symmetries(unsigned long long seed) {
  Rng rng(seed);
  CheckReport rep;
  ModeCoefficients mc;
  mc.entries.push_back({Vec3(0.0, 2.0 * M_PI, 4.0 * M_PI), 1,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  mc.entries.push_back({Vec3(0.0, 2.0 * M_PI, 4.0 * M_PI), 2,
                        Complex(rng.uniform(-1, 1), rng.uniform(-1, 1))});
  Grid g;
  g.dims = {10, 10, 10};
  g.spacing = Vec3::Ones() / 10.0;
  const double t = rng.uniform(0.05, 0.4);
  const SpinorGridField f = synthesize_field(mc, Representation::Standard, g, t);
  const SpinorGridField dt = synthesize_field(mc, Representation::Standard, g, t, 1);
  auto field_dev = [&](const SpinorGridField& a, const SpinorGridField& b) {
    double d = 0.0;
    for (int n = 0; n < g.size(); ++n) d = std::max(d, max_abs(CVec6(a.values[n] - b.values[n])));
    return d;
  };
  rep.add("parity grid action matches mode action",
          field_dev(parity(f), synthesize_field(parity(mc), f.rep, g, t)));
  rep.add("time reversal grid action matches mode action",
          field_dev(time_reversal(f), synthesize_field(time_reversal(mc), f.rep, g, -t)));
  rep.add("charge conjugation fixes real-field spinors", field_dev(charge_conjugation(f), f));
  const double r0 = dirac_residual(f, dt);
  rep.add("chiral transform preserves the residual",
          std::abs(r0 - dirac_residual(chiral_transform(f, 0.7), chiral_transform(dt, 0.7))));
  const SpinorGridField cf = chiral_transform(f, M_PI / 2.0);
  double ehdev = 0.0;
  for (int n = 0; n < g.size(); ++n) {
    CVec3 E, H, Ec, Hc;
    extract_sample(f.values[n], f.rep, E, H);
    extract_sample(cf.values[n], cf.rep, Ec, Hc);
    ehdev = std::max({ehdev, max_abs(CVec3(Ec + H)), max_abs(CVec3(Hc - E))});
  }
  rep.add("quarter-turn chiral rotation swaps field roles", ehdev);
  rep.add("axial current vanishes", axial_current_max(f));
  const InvarianceCertificate cert = lorentz_invariance_certificate(f, dt);
  rep.add("spatial generator bracket identity", cert.bracket_identity);
  return rep;
}

inline CheckReport suite_medium(unsigned long long seed, int samples = 6) {
  const MediumProfile prof{
      [](const Vec4& x) {
        const Jet2d t = Jet2d::variable(x(0), 0), x1 = Jet2d::variable(x(1), 1),
                    x2 = Jet2d::variable(x(2), 2), x3 = Jet2d::variable(x(3), 3);
        return exp(0.4 * x1 + 0.1 * sin(x2) + 0.05 * t * x3);
      },
      [](const Vec4& x) {
        const Jet2d t = Jet2d::variable(x(0), 0), x1 = Jet2d::variable(x(1), 1),
                    x2 = Jet2d::variable(x(2), 2), x3 = Jet2d::variable(x(3), 3);
        return exp(0.2 * x3 + 0.15 * cos(x1 + x2) - 0.03 * t * t);
      }};
  const MediumProfile hom = MediumProfile::homogeneous(2.25, 1.1);
  CheckReport rep = parallel_sweep(samples, [&](int i) {
    Rng rng(seed + static_cast<unsigned long long>(i));
    const Vec4 x(rng.uniform(-0.5, 0.5), rng.uniform(-1, 1), rng.uniform(-1, 1),
                 rng.uniform(-1, 1));
    const SpinorJet psi = random_spinor_jet(rng);
    CheckReport r = medium_second_order_check(i % 2 == 0 ? prof : hom, x, psi);
    return r;
  });
  return collapse_worst(rep);
}

inline CheckReport suite_gravity(unsigned long long seed, int connection_points = 100) {
  const SchwarzschildParams ps{1.0, Chart::Standard}, pi{1.0, Chart::Isotropic};
  const DiagonalMetric ms = schwarzschild_metric(ps), mi = schwarzschild_metric(pi);
  CheckReport rep = parallel_sweep(connection_points, [&](int i) {
    Rng rng(seed + static_cast<unsigned long long>(i));
    const Vec4 xs(rng.uniform(-1, 1), rng.uniform(1.05, 10.0), rng.uniform(0.3, M_PI - 0.3),
                  rng.uniform(0.0, 2.0 * M_PI));
    Vec4 xi(rng.uniform(-1, 1), rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
    if (xi.tail<3>().norm() < 0.3) xi(1) += 1.0;
    CheckReport r;
    r.merge(connection_check(ms, xs));
    r.merge(connection_check(mi, xi));
    if (i < 8) {
      const SpinorJet psi = random_spinor_jet(rng);
      for (Representation rp : {Representation::Chiral, Representation::Standard}) {
        r.merge(curved_operator_check(ms, rp, xs, psi));
        r.merge(curved_operator_check(mi, rp, xi, psi));
      }
      r.merge(schwarzschild_operator_check(ps, xs, psi));
      r.merge(schwarzschild_operator_check(pi, xi, psi));
    }
    return collapse_worst(r);
  });
  // pinned orbit constants
  const double s3 = std::sqrt(3.0);
  const OrbitResult cl = classical_orbit(ps, 2.0);
  rep.add("classical photon sphere radius", std::abs(cl.radius - 1.5));
  rep.add("classical orbital frequency", std::abs(cl.omega_sq_plus - 16.0 / 27.0));
  const OrbitResult st = circular_orbit_standard(ps, 2);
  rep.add("spin-averaged frequency at the photon sphere",
          std::abs(st.omega_sq_plus - 32.0 / 81.0));
  rep.add("determinant cubic vs closed form", st.diagnostics.residual);
  const OrbitResult iso = circular_orbit_isotropic(pi, 2);
  rep.add("helicity-split levels",
          std::max(std::abs(iso.omega_sq_plus - 8.0 / 9.0),
                   std::abs(iso.omega_sq_minus - 8.0 / 27.0)));
  const HelicityRadii hr = helicity_split_radii(pi, 2.0);
  rep.add("uncorrected orbit radius", std::abs(hr.rho_zero - (2.0 + s3) / 4.0));
  const double rp = hr.rho_plus, rm = hr.rho_minus;
  rep.add("shifted-orbit cubic residual",
          std::abs(64.0 * rp * rp * rp - 112.0 * rp * rp + 40.0 * rp - 3.0));
  rep.add("shifted-orbit quartic residual",
          std::abs(128.0 * rm * rm * rm * rm - 32.0 * rm * rm * rm - 80.0 * rm * rm +
                   22.0 * rm - 1.0));
  return collapse_worst(rep);
}

}  // namespace photospin

#endif
