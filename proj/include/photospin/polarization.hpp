#ifndef PHOTOSPIN_POLARIZATION_HPP
#define PHOTOSPIN_POLARIZATION_HPP

#include <cmath>

#include "photospin/algebra.hpp"
#include "photospin/core.hpp"
#include "photospin/report.hpp"

namespace photospin {

// Photon wave vector; omega = |k|. The k1 = k2 = 0 axis needs a directional
// limit in the polarization formulas, flagged here.
struct WaveVector {
  Vec3 k;

  static constexpr double kDegenerateTol = 1e-24;  // on k1^2+k2^2 relative to |k|^2

  double omega() const { return k.norm(); }
  Vec3 khat() const {
    const double w = omega();
    if (w == 0.0) throw ZeroWaveVector();
    return k / w;
  }
  bool axis_degenerate() const {
    const double k2 = k.squaredNorm();
    return k(0) * k(0) + k(1) * k(1) < kDegenerateTol * k2;
  }
  WaveVector negated() const { return {-k}; }
};

// Linear basis eps(k,1..3) and circular basis e_{+1}, e_{-1}, e_0.
struct PolBasis {
  Vec3 eps1, eps2, eps3;
  CVec3 e_plus, e_minus, e_zero;
};

// Linear polarization columns. The degenerate axis takes the limit along
// k2 = 0, k1 -> 0+, which keeps eps1 x eps2 = eps3.
inline void linear_basis(const WaveVector& kv, Vec3& eps1, Vec3& eps2, Vec3& eps3) {
  const double w = kv.omega();
  if (w == 0.0) throw ZeroWaveVector();
  const Vec3& k = kv.k;
  eps3 = k / w;
  if (kv.axis_degenerate()) {
    const double s = k(2) >= 0.0 ? 1.0 : -1.0;
    eps1 = Vec3(s, 0.0, 0.0);
    eps2 = Vec3(0.0, 1.0, 0.0);
    return;
  }
  const double kperp2 = k(0) * k(0) + k(1) * k(1);
  eps1 = Vec3((k(0) * k(0) * k(2) + k(1) * k(1) * w) / kperp2,
              k(0) * k(1) * (k(2) - w) / kperp2, -k(0)) /
         w;
  eps2 = Vec3(k(0) * k(1) * (k(2) - w) / kperp2,
              (k(0) * k(0) * w + k(1) * k(1) * k(2)) / kperp2, -k(1)) /
         w;
}

inline PolBasis circular_basis(const WaveVector& kv) {
  PolBasis b;
  linear_basis(kv, b.eps1, b.eps2, b.eps3);
  b.e_plus = (b.eps1.cast<Complex>() + I * b.eps2.cast<Complex>()) / std::sqrt(2.0);
  b.e_minus = b.e_plus.conjugate();
  b.e_zero = b.eps3.cast<Complex>();
  return b;
}

// Basis rotated about k by phi = -atan2(k2, k1); under k -> -k the rotated
// right/left circular vectors simply swap. Degenerate axis: phi undefined,
// return the unrotated basis.
inline void rotated_circular_basis(const WaveVector& kv, CVec3& ep, CVec3& em) {
  const PolBasis b = circular_basis(kv);
  if (kv.axis_degenerate()) {
    ep = b.e_plus;
    em = b.e_minus;
    return;
  }
  const double phi = -std::atan2(kv.k(1), kv.k(0));
  ep = std::exp(I * phi) * b.e_plus;
  em = std::exp(-I * phi) * b.e_minus;
}

// Unit mode spinors: f pair in the standard layout, g pair in the chiral one.
struct ModeSpinor {
  CVec6 f1, f2;  // standard
  CVec6 g1, g2;  // chiral
};

inline ModeSpinor mode_spinors(const WaveVector& kv) {
  ModeSpinor m;
  const PolBasis b = circular_basis(kv);
  const double s = 1.0 / std::sqrt(2.0);
  m.f1 << s * b.eps1.cast<Complex>(), I * s * b.eps2.cast<Complex>();
  m.f2 << s * b.eps2.cast<Complex>(), -I * s * b.eps1.cast<Complex>();
  m.g1 << s * b.e_plus, s * b.e_minus;
  m.g2 << -I * s * b.e_plus, I * s * b.e_minus;
  return m;
}

inline CVec6 mode_spinor(const WaveVector& kv, int i, Representation rep) {
  const ModeSpinor m = mode_spinors(kv);
  if (rep == Representation::Standard) return i == 1 ? m.f1 : m.f2;
  return i == 1 ? m.g1 : m.g2;
}

// Numerical evaluation of the orthogonality / helicity / parity identity set
// for a given k. Each record is the max deviation of one identity.
inline CheckReport polarization_identity_suite(const WaveVector& kv) {
  CheckReport rep;
  const double w = kv.omega();
  if (w == 0.0) throw ZeroWaveVector();
  const PolBasis b = circular_basis(kv);
  const Vec3& k = kv.k;
  const std::array<Vec3, 3> eps = {b.eps1, b.eps2, b.eps3};
  const auto& t = tau();
  const bool degen = kv.axis_degenerate();

  auto tau_sandwich = [&](const CVec3& a, const CVec3& c) {
    CVec3 out;
    for (int l = 0; l < 3; ++l) out(l) = (a.adjoint() * t[l] * c)(0, 0);
    return out;
  };

  {  // eps^dag(k,i) tau eps(k,j) = -i eta_i x eta_j
    double dev = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CVec3 lhs = tau_sandwich(eps[i].cast<Complex>(), eps[j].cast<Complex>());
        CVec3 rhs = -I * eps[i].cross(eps[j]).cast<Complex>();
        dev = std::max(dev, max_abs(CVec3(lhs - rhs)));
      }
    rep.add("eps^t tau eps = -i eta x eta", dev);
  }
  {  // orthonormality + completeness
    double dev = 0.0;
    Mat3 comp = Mat3::Zero();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j)
        dev = std::max(dev, std::abs(eps[i].dot(eps[j]) - (i == j ? 1.0 : 0.0)));
      comp += eps[i].cast<Complex>() * eps[i].cast<Complex>().adjoint();
    }
    dev = std::max(dev, max_abs(Mat3(comp - Mat3::Identity())));
    rep.add("linear orthonormality + completeness", dev);
  }
  if (!degen) {
    Vec3 m1, m2, m3;
    linear_basis(kv.negated(), m1, m2, m3);
    const double kperp2 = k(0) * k(0) + k(1) * k(1);
    const double c = (k(1) * k(1) - k(0) * k(0)) / kperp2;
    const double d = -2.0 * k(0) * k(1) / kperp2;
    double dev = std::abs(eps[0].dot(m1) - c);
    dev = std::max(dev, std::abs(eps[1].dot(m2) + c));
    dev = std::max(dev, std::abs(eps[0].dot(m2) - d));
    dev = std::max(dev, std::abs(eps[1].dot(m1) - d));
    rep.add("eps(k) . eps(-k) closed forms", dev);

    const CVec3 e1c = eps[0].cast<Complex>();
    const CVec3 e2c = eps[1].cast<Complex>();
    const CVec3 m1c = m1.cast<Complex>();
    const CVec3 m2c = m2.cast<Complex>();
    const CVec3 kc = k.cast<Complex>();
    double tdev =
        max_abs(CVec3(tau_sandwich(e1c, e2c) - (-I / w) * kc));
    tdev = std::max(tdev, max_abs(CVec3(tau_sandwich(e2c, e1c) - (I / w) * kc)));
    tdev = std::max(tdev, max_abs(tau_sandwich(e1c, e1c)));
    tdev = std::max(tdev, max_abs(tau_sandwich(e2c, e2c)));
    tdev = std::max(
        tdev, max_abs(CVec3(tau_sandwich(e1c, m2c) - (I * c / w) * kc)));
    tdev = std::max(
        tdev, max_abs(CVec3(tau_sandwich(e2c, m1c) - (I * c / w) * kc)));
    tdev = std::max(
        tdev, max_abs(CVec3(tau_sandwich(e1c, m1c) - (-I * d / w) * kc)));
    tdev = std::max(
        tdev, max_abs(CVec3(tau_sandwich(e2c, m2c) - (I * d / w) * kc)));
    rep.add("eps^t tau eps closed forms", tdev);
  }
  {  // circular orthonormality + completeness
    const std::array<CVec3, 3> e = {b.e_plus, b.e_minus, b.e_zero};
    double dev = 0.0;
    Mat3 comp = Mat3::Zero();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Complex d = (e[i].adjoint() * e[j])(0, 0);
        dev = std::max(dev, std::abs(d - (i == j ? 1.0 : 0.0)));
      }
      comp += e[i] * e[i].adjoint();
    }
    dev = std::max(dev, max_abs(Mat3(comp - Mat3::Identity())));
    rep.add("circular orthonormality + completeness", dev);
  }
  {  // helicity eigenrelation (tau.khat) e_lambda = lambda e_lambda
    const Mat3 h = tau_dot(kv.khat());
    double dev = max_abs(CVec3(h * b.e_plus - b.e_plus));
    dev = std::max(dev, max_abs(CVec3(h * b.e_minus + b.e_minus)));
    dev = std::max(dev, max_abs(CVec3(h * b.e_zero)));
    rep.add("helicity eigenrelation", dev);
  }
  {  // e_1^t tau e_1 = -e_-1^t tau e_-1 = k/omega
    const CVec3 kc = k.cast<Complex>();
    double dev = max_abs(CVec3(tau_sandwich(b.e_plus, b.e_plus) - kc / w));
    dev = std::max(dev, max_abs(CVec3(tau_sandwich(b.e_minus, b.e_minus) + kc / w)));
    rep.add("circular tau diagonal", dev);
  }
  if (!degen) {
    // parity pair e_1(-k) = -exp(i theta) e_-1(k), exp(i theta) = (k1+ik2)/(k1-ik2)
    const PolBasis bm = circular_basis(kv.negated());
    const Complex z(k(0), k(1));
    const Complex phase = std::conj(z) == 0.0 ? Complex(1.0) : z / std::conj(z);
    rep.add("unimodular parity phase", std::abs(std::abs(phase) - 1.0));
    double dev = max_abs(CVec3(bm.e_plus + phase * b.e_minus));
    dev = std::max(dev, max_abs(CVec3(bm.e_minus + std::conj(phase) * b.e_plus)));
    rep.add("circular parity pair", dev);

    CVec3 ep, em, epm, emm;
    rotated_circular_basis(kv, ep, em);
    rotated_circular_basis(kv.negated(), epm, emm);
    double rdev = max_abs(CVec3(epm - em));
    rdev = std::max(rdev, max_abs(CVec3(emm - ep)));
    rep.add("rotated basis parity swap", rdev);

    double cdev = max_abs(CVec3(tau_sandwich(b.e_plus, bm.e_plus)));
    cdev = std::max(cdev, max_abs(CVec3(tau_sandwich(b.e_minus, bm.e_minus))));
    cdev = std::max(cdev, std::abs((bm.e_plus.adjoint() * b.e_plus)(0, 0)));
    cdev = std::max(cdev, std::abs((bm.e_minus.adjoint() * b.e_minus)(0, 0)));
    rep.add("circular cross-k orthogonality", cdev);
  }
  {  // mode spinor identities (standard and chiral)
    const ModeSpinor m = mode_spinors(kv);
    const ModeSpinor mneg = mode_spinors(kv.negated());
    const MatrixSet& std_set = build_matrices(Representation::Standard);
    const MatrixSet& chi_set = build_matrices(Representation::Chiral);
    const std::array<const CVec6*, 2> f = {&m.f1, &m.f2};
    const std::array<const CVec6*, 2> fn = {&mneg.f1, &mneg.f2};
    const std::array<const CVec6*, 2> g = {&m.g1, &m.g2};
    const std::array<const CVec6*, 2> gn = {&mneg.g1, &mneg.g2};
    double dev = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Complex dij = i == j ? 1.0 : 0.0;
        dev = std::max(dev, std::abs((f[i]->adjoint() * *f[j])(0, 0) - dij));
        dev = std::max(dev, std::abs((f[i]->adjoint() * *fn[j])(0, 0)));
        dev = std::max(dev, std::abs((g[i]->adjoint() * *g[j])(0, 0) - dij));
        dev = std::max(dev, std::abs((g[i]->adjoint() * *gn[j])(0, 0)));
        for (int l = 0; l < 3; ++l) {
          const Complex target = dij * k(l) / w;
          dev = std::max(dev, std::abs((f[i]->adjoint() * std_set.alpha[l] * *f[j])(0, 0) - target));
          dev = std::max(dev, std::abs((f[i]->adjoint() * std_set.alpha[l] * *fn[j])(0, 0)));
          dev = std::max(dev, std::abs((g[i]->adjoint() * chi_set.alpha[l] * *g[j])(0, 0) - target));
          dev = std::max(dev, std::abs((g[i]->adjoint() * chi_set.alpha[l] * *gn[j])(0, 0)));
        }
        // g_i = U f_i
        dev = std::max(dev, max_abs(CVec6(*g[i] - basis_change() * *f[i])));
      }
    rep.add("mode spinor orthogonality and currents", dev);
  }
  {  // circular-from-linear equals the explicit component formula
    if (!degen) {
      const Complex denom = Complex(k(0), -k(1));
      CVec3 explicit_e1;
      explicit_e1 << (k(0) * k(2) - I * k(1) * w) / denom,
          (k(1) * k(2) + I * k(0) * w) / denom, -Complex(k(0), k(1));
      explicit_e1 /= std::sqrt(2.0) * w;
      rep.add("explicit circular component form",
              max_abs(CVec3(b.e_plus - explicit_e1)));
    }
  }
  return rep;
}

}  // namespace photospin

#endif
