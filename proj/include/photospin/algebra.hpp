#ifndef PHOTOSPIN_ALGEBRA_HPP
#define PHOTOSPIN_ALGEBRA_HPP

#include <array>
#include <cmath>

#include "photospin/core.hpp"
#include "photospin/report.hpp"

namespace photospin {

inline double levi_civita(int l, int m, int n) {
  return static_cast<double>((l - m) * (m - n) * (n - l)) / 2.0;
}

// Spin-1 generators tau_l with (tau_l)_{mn} = -i eps_{lmn}.
inline const std::array<Mat3, 3>& tau() {
  static const std::array<Mat3, 3> t = [] {
    std::array<Mat3, 3> out;
    for (int l = 0; l < 3; ++l) {
      out[l].setZero();
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
          out[l](m, n) = -I * levi_civita(l, m, n);
    }
    return out;
  }();
  return t;
}

inline Mat3 tau_dot(const CVec3& a) {
  const auto& t = tau();
  return a(0) * t[0] + a(1) * t[1] + a(2) * t[2];
}

inline Mat3 tau_dot(const Vec3& a) { return tau_dot(CVec3(a.cast<Complex>())); }

// Fixed unitary relating the chiral and standard layouts, U = U^dagger = U^-1.
inline const Mat6& basis_change() {
  static const Mat6 u = [] {
    Mat6 out = Mat6::Zero();
    const double s = 1.0 / std::sqrt(2.0);
    out.block<3, 3>(0, 0) = s * Mat3::Identity();
    out.block<3, 3>(0, 3) = s * Mat3::Identity();
    out.block<3, 3>(3, 0) = s * Mat3::Identity();
    out.block<3, 3>(3, 3) = -s * Mat3::Identity();
    return out;
  }();
  return u;
}

// The full fixed-matrix set of one representation.
struct MatrixSet {
  Representation rep;
  Mat6 beta0;
  std::array<Mat6, 3> beta;   // beta^l = beta_l
  std::array<Mat6, 3> alpha;  // alpha = beta^0 beta
  std::array<Mat6, 3> sigma;  // same in both representations
  Mat6 beta5;
  Mat6 U;

  // beta^mu with the index up; beta_0 = -beta^0.
  const Mat6& beta_upper(int mu) const { return mu == 0 ? beta0 : beta[mu - 1]; }
  Mat6 beta_lower(int mu) const {
    return mu == 0 ? Mat6(-beta0) : beta[mu - 1];
  }
  Mat6 alpha_dot(const CVec3& a) const {
    return a(0) * alpha[0] + a(1) * alpha[1] + a(2) * alpha[2];
  }
  Mat6 alpha_dot(const Vec3& a) const { return alpha_dot(CVec3(a.cast<Complex>())); }
  Mat6 sigma_dot(const CVec3& a) const {
    return a(0) * sigma[0] + a(1) * sigma[1] + a(2) * sigma[2];
  }
  Mat6 sigma_dot(const Vec3& a) const { return sigma_dot(CVec3(a.cast<Complex>())); }
  Mat6 beta_dot(const CVec3& a) const {
    return a(0) * beta[0] + a(1) * beta[1] + a(2) * beta[2];
  }
  // beta^mu a_mu for a contravariant 4-vector a^mu = (a0, a).
  Mat6 beta_contract(const CVec4& a_upper) const {
    Mat6 out = -a_upper(0) * beta0;
    for (int l = 0; l < 3; ++l) out += a_upper(l + 1) * beta[l];
    return out;
  }
};

namespace detail {

inline MatrixSet make_chiral_set() {
  MatrixSet s;
  s.rep = Representation::Chiral;
  const auto& t = tau();
  const Mat3 id = Mat3::Identity();
  const Mat3 z = Mat3::Zero();
  auto block6 = [](const Mat3& a, const Mat3& b, const Mat3& c, const Mat3& d) {
    Mat6 m;
    m.block<3, 3>(0, 0) = a;
    m.block<3, 3>(0, 3) = b;
    m.block<3, 3>(3, 0) = c;
    m.block<3, 3>(3, 3) = d;
    return m;
  };
  s.beta0 = block6(z, id, id, z);
  for (int l = 0; l < 3; ++l) {
    s.beta[l] = block6(z, -t[l], t[l], z);
    s.alpha[l] = block6(t[l], z, z, -t[l]);
    s.sigma[l] = block6(t[l], z, z, t[l]);
  }
  s.beta5 = block6(id, z, z, -id);
  s.U = basis_change();
  return s;
}

inline MatrixSet make_standard_set() {
  const MatrixSet c = make_chiral_set();
  const Mat6& u = basis_change();
  MatrixSet s;
  s.rep = Representation::Standard;
  s.beta0 = u * c.beta0 * u;
  for (int l = 0; l < 3; ++l) {
    s.beta[l] = u * c.beta[l] * u;
    s.alpha[l] = u * c.alpha[l] * u;
    s.sigma[l] = c.sigma[l];  // Sigma_S = Sigma_C
  }
  s.beta5 = u * c.beta5 * u;
  s.U = u;
  return s;
}

}  // namespace detail

inline const MatrixSet& build_matrices(Representation rep) {
  static const MatrixSet chiral = detail::make_chiral_set();
  static const MatrixSet standard = detail::make_standard_set();
  return rep == Representation::Chiral ? chiral : standard;
}

// exp(i a.tau) in closed form: cos a + i (a.tau)/a sin a + a a^T (1-cos a)/a^2,
// with a = sqrt(a.a) on the principal branch. Every coefficient is an even
// function of a, so the branch choice drops out; near a^2 = 0 a Taylor
// expansion in a^2 avoids the 0/0.
inline Mat3 exp_tau(const CVec3& a) {
  const Complex a2 = a(0) * a(0) + a(1) * a(1) + a(2) * a(2);
  const Mat3 at = tau_dot(a);
  const Mat3 outer = a * a.transpose();
  Complex cos_a, sinc_a, versinc_a;  // cos a, sin(a)/a, (1-cos a)/a^2
  if (std::abs(a2) < 1e-16) {
    cos_a = 1.0 - a2 / 2.0 + a2 * a2 / 24.0;
    sinc_a = 1.0 - a2 / 6.0 + a2 * a2 / 120.0;
    versinc_a = 0.5 - a2 / 24.0 + a2 * a2 / 720.0;
  } else {
    const Complex am = std::sqrt(a2);
    cos_a = std::cos(am);
    sinc_a = std::sin(am) / am;
    versinc_a = (1.0 - cos_a) / a2;
  }
  return cos_a * Mat3::Identity() + I * sinc_a * at + versinc_a * outer;
}

inline Mat3 exp_tau(const Vec3& a) { return exp_tau(CVec3(a.cast<Complex>())); }

// Rotation angles theta and rapidities zeta of a proper Lorentz transformation.
struct LorentzParams {
  Vec3 theta = Vec3::Zero();
  Vec3 zeta = Vec3::Zero();

  // omega^{i0} = zeta^i, omega^{lm} = -eps^{lmn} theta_n.
  Eigen::Matrix4d omega_upper() const {
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 3; ++i) {
      w(i + 1, 0) = zeta(i);
      w(0, i + 1) = -zeta(i);
    }
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n)
          w(l + 1, m + 1) -= levi_civita(l, m, n) * theta(n);
    return w;
  }
};

// (1,0)+(0,1) representation matrix of the transformation with parameters p.
// Chiral form is block-diag(exp[i tau.(theta - i zeta)], exp[i tau.(theta + i zeta)]);
// the standard form is its conjugate by U.
inline Mat6 lorentz_rep(Representation rep, const LorentzParams& p) {
  const CVec3 a_plus = p.theta.cast<Complex>() - I * p.zeta.cast<Complex>();
  const CVec3 a_minus = p.theta.cast<Complex>() + I * p.zeta.cast<Complex>();
  Mat6 lc = Mat6::Zero();
  lc.block<3, 3>(0, 0) = exp_tau(a_plus);
  lc.block<3, 3>(3, 3) = exp_tau(a_minus);
  if (rep == Representation::Chiral) return lc;
  const Mat6& u = basis_change();
  return u * lc * u;
}

// Contravariant spin tensor S^{mu nu}: S^{lm} = eps^{lmn} Sigma_n, S^{0l} = i alpha^l.
inline std::array<std::array<Mat6, 4>, 4> spin_generators(Representation rep) {
  const MatrixSet& m = build_matrices(rep);
  std::array<std::array<Mat6, 4>, 4> s;
  for (auto& row : s)
    for (auto& e : row) e.setZero();
  for (int l = 0; l < 3; ++l) {
    s[0][l + 1] = I * m.alpha[l];
    s[l + 1][0] = -I * m.alpha[l];
    for (int mm = 0; mm < 3; ++mm)
      for (int n = 0; n < 3; ++n)
        s[l + 1][mm + 1] += levi_civita(l, mm, n) * m.sigma[n];
  }
  return s;
}

// Covariant components S_{mu nu} = eta_{mu rho} eta_{nu sig} S^{rho sig}.
inline std::array<std::array<Mat6, 4>, 4> spin_generators_lower(Representation rep) {
  auto s = spin_generators(rep);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      s[mu][nu] *= minkowski_eta(mu, mu) * minkowski_eta(nu, nu);
  return s;
}

// Product identities for (tau.a)(tau.b) and (beta^mu a_mu)(beta^nu b_nu),
// evaluated entrywise for given complex 4-vectors a, b.
inline CheckReport product_identities_check(const CVec4& a, const CVec4& b,
                                            Representation rep) {
  CheckReport rep_out;
  const CVec3 a3 = a.tail<3>();
  const CVec3 b3 = b.tail<3>();
  const CVec3 cross = cross3(a3, b3);
  const Complex dot3 = a3(0) * b3(0) + a3(1) * b3(1) + a3(2) * b3(2);

  {
    const Mat3 lhs = tau_dot(a3) * tau_dot(b3);
    const Mat3 rhs = dot3 * Mat3::Identity() + I * tau_dot(cross) -
                     a3 * b3.transpose();
    rep_out.add("tau product expansion", max_abs(Mat3(lhs - rhs)));
  }
  {
    // a_m^T tau b_m = -i (a x b), componentwise in the tau index.
    const auto& t = tau();
    double dev = 0.0;
    for (int l = 0; l < 3; ++l) {
      const Complex lhs = (a3.transpose() * t[l] * b3)(0, 0);
      dev = std::max(dev, std::abs(lhs - (-I * cross(l))));
    }
    rep_out.add("a^T tau b = -i (a x b)", dev);
  }
  {
    const MatrixSet& m = build_matrices(rep);
    const Mat6 lhs = m.beta_contract(a) * m.beta_contract(b);
    const Complex a_dot_b = -a(0) * b(0) + dot3;  // a^mu b_mu
    Mat6 rhs = -a_dot_b * Mat6::Identity();
    rhs += -I * m.sigma_dot(cross);
    rhs += m.alpha_dot(CVec3(a3 * b(0) - a(0) * b3));
    Mat6 outer6 = Mat6::Zero();
    outer6.block<3, 3>(0, 0) = a3 * b3.transpose();
    outer6.block<3, 3>(3, 3) = a3 * b3.transpose();
    rhs += outer6;
    rep_out.add("beta contraction expansion", max_abs(Mat6(lhs - rhs)));
  }
  return rep_out;
}

// Lie-algebra and commutator identities of the generator set.
inline CheckReport generator_algebra_check() {
  CheckReport rep;
  const auto& t = tau();

  // [tau_l, tau_m] = i eps_{lmn} tau_n, and the rotation/boost algebra for
  // J = tau, K = -/+ i tau.
  {
    double dev = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m) {
        Mat3 comm = t[l] * t[m] - t[m] * t[l];
        Mat3 rhs = Mat3::Zero();
        for (int n = 0; n < 3; ++n) rhs += I * levi_civita(l, m, n) * t[n];
        dev = std::max(dev, max_abs(Mat3(comm - rhs)));
      }
    rep.add("[tau_l, tau_m] = i eps tau_n", dev);
  }
  for (double ksign : {-1.0, 1.0}) {
    std::array<Mat3, 3> J = t;
    std::array<Mat3, 3> K;
    for (int l = 0; l < 3; ++l) K[l] = ksign * I * t[l];
    double dev = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m) {
        Mat3 jj = J[l] * J[m] - J[m] * J[l];
        Mat3 kk = K[l] * K[m] - K[m] * K[l];
        Mat3 jk = J[l] * K[m] - K[m] * J[l];
        Mat3 rj = Mat3::Zero(), rk = Mat3::Zero();
        for (int n = 0; n < 3; ++n) {
          rj += I * levi_civita(l, m, n) * J[n];
          rk += I * levi_civita(l, m, n) * K[n];
        }
        dev = std::max(dev, max_abs(Mat3(jj - rj)));
        dev = std::max(dev, max_abs(Mat3(kk + rj)));
        dev = std::max(dev, max_abs(Mat3(jk - rk)));
      }
    rep.add(ksign > 0 ? "rotation/boost algebra, K=+i tau"
                      : "rotation/boost algebra, K=-i tau",
            dev);
    // Q+- = (J +- iK)/2 generate commuting su(2)'s.
    std::array<Mat3, 3> Qp, Qm;
    for (int l = 0; l < 3; ++l) {
      Qp[l] = (J[l] + I * K[l]) / 2.0;
      Qm[l] = (J[l] - I * K[l]) / 2.0;
    }
    double qdev = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m) {
        Mat3 cross_comm = Qp[l] * Qm[m] - Qm[m] * Qp[l];
        qdev = std::max(qdev, max_abs(cross_comm));
        Mat3 pp = Qp[l] * Qp[m] - Qp[m] * Qp[l];
        Mat3 mm = Qm[l] * Qm[m] - Qm[m] * Qm[l];
        Mat3 rp = Mat3::Zero(), rm = Mat3::Zero();
        for (int n = 0; n < 3; ++n) {
          rp += I * levi_civita(l, m, n) * Qp[n];
          rm += I * levi_civita(l, m, n) * Qm[n];
        }
        qdev = std::max(qdev, max_abs(Mat3(pp - rp)));
        qdev = std::max(qdev, max_abs(Mat3(mm - rm)));
      }
    rep.add(ksign > 0 ? "Q+/Q- algebra, K=+i tau" : "Q+/Q- algebra, K=-i tau",
            qdev);
  }

  for (Representation r : {Representation::Chiral, Representation::Standard}) {
    const MatrixSet& m = build_matrices(r);
    const auto s_lo = spin_generators_lower(r);
    // so(3,1): i[S_ab, S_cd] = eta_bc S_ad - eta_ac S_bd + eta_db S_ca - eta_da S_cb.
    double dev = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            Mat6 lhs = I * (s_lo[a][b] * s_lo[c][d] - s_lo[c][d] * s_lo[a][b]);
            Mat6 rhs = minkowski_eta(b, c) * s_lo[a][d] -
                       minkowski_eta(a, c) * s_lo[b][d] +
                       minkowski_eta(d, b) * s_lo[c][a] -
                       minkowski_eta(d, a) * s_lo[c][b];
            dev = std::max(dev, max_abs(Mat6(lhs - rhs)));
          }
    rep.add(std::string("so(3,1) algebra, ") + to_string(r), dev);

    // beta^l Sigma^m - Sigma^m beta^l = i eps^{lmn} beta_n, and the
    // antisymmetrized variant.
    double bdev = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int mm = 0; mm < 3; ++mm) {
        Mat6 rhs = Mat6::Zero();
        for (int n = 0; n < 3; ++n) rhs += I * levi_civita(l, mm, n) * m.beta[n];
        Mat6 lhs1 = m.beta[l] * m.sigma[mm] - m.sigma[mm] * m.beta[l];
        Mat6 lhs2 = m.beta[l] * m.sigma[mm] - m.beta[mm] * m.sigma[l];
        bdev = std::max(bdev, max_abs(Mat6(lhs1 - rhs)));
        bdev = std::max(bdev, max_abs(Mat6(lhs2 - rhs)));
      }
    rep.add(std::string("beta-Sigma commutators, ") + to_string(r), bdev);

    // S^{0l} = i alpha^l is anti-Hermitian (alpha Hermitian).
    const auto s_up = spin_generators(r);
    double hdev = 0.0;
    for (int l = 1; l < 4; ++l)
      hdev = std::max(hdev, max_abs(Mat6(s_up[0][l] + s_up[0][l].adjoint())));
    rep.add(std::string("S^{0l} anti-Hermitian, ") + to_string(r), hdev);
  }
  return rep;
}

}  // namespace photospin

#endif
