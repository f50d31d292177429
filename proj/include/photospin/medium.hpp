#ifndef PHOTOSPIN_MEDIUM_HPP
#define PHOTOSPIN_MEDIUM_HPP

#include <functional>

#include "photospin/field.hpp"
#include "photospin/jet.hpp"
#include "photospin/report.hpp"

namespace photospin {

// eps_r, mu_r as analytic callbacks over (t, x1, x2, x3), evaluated with
// second-order jets so every operator identity is limited by round-off only.
struct MediumProfile {
  std::function<Jet2d(const Vec4&)> eps_r;
  std::function<Jet2d(const Vec4&)> mu_r;

  static MediumProfile homogeneous(double er, double mr) {
    return {[er](const Vec4&) { return Jet2d(er); },
            [mr](const Vec4&) { return Jet2d(mr); }};
  }
};

// Connection data at one spacetime point. Lower-index components; the scaled
// time derivative is d_0 = n d_t, and chi_0 = -chi^0 = -n d_t ln sqrt(eps_r).
// Each entry carries its own first coordinate derivatives (index 0 is the
// plain d_t, unscaled).
struct MediumSample {
  Jet2d lnse, lnsm;  // ln sqrt(eps_r), ln sqrt(mu_r)
  Jet2d n;
  std::array<Jet1d, 4> chi_low, eta_low;

  double chi0_up() const { return -chi_low[0].v; }
  double eta0_up() const { return -eta_low[0].v; }
  Vec3 chi_vec() const { return {chi_low[1].v, chi_low[2].v, chi_low[3].v}; }
  Vec3 eta_vec() const { return {eta_low[1].v, eta_low[2].v, eta_low[3].v}; }
  Vec3 grad_ln_n() const { return chi_vec() + eta_vec(); }
  double m_eff() const { return chi_vec().norm(); }
  // Deviation of the construction identity grad ln n = chi + eta.
  double connection_identity() const {
    double dev = 0.0;
    for (int i = 1; i < 4; ++i)
      dev = std::max(dev, std::abs(n.g[i] / n.v - (chi_low[i].v + eta_low[i].v)));
    return dev;
  }
};

inline MediumSample medium_connection(const MediumProfile& p, const Vec4& x) {
  MediumSample s;
  const Jet2d er = p.eps_r(x);
  const Jet2d mr = p.mu_r(x);
  if (!(er.v > 0.0) || !(mr.v > 0.0))
    throw NonPositiveMedium("eps_r and mu_r must be positive");
  s.lnse = 0.5 * log(er);
  s.lnsm = 0.5 * log(mr);
  s.n = sqrt(er * mr);
  for (int i = 1; i < 4; ++i) {
    s.chi_low[i] = deriv(s.lnse, i);
    s.eta_low[i] = deriv(s.lnsm, i);
  }
  // chi_0 = -n d_t ln sqrt(eps_r), with its own coordinate derivatives.
  auto scaled_t = [&](const Jet2d& f) {
    Jet1d r;
    r.v = -s.n.v * f.g[0];
    for (int a = 0; a < 4; ++a) r.g[a] = -(s.n.g[a] * f.g[0] + s.n.v * f.h[0][a]);
    return r;
  };
  s.chi_low[0] = scaled_t(s.lnse);
  s.eta_low[0] = scaled_t(s.lnsm);
  return s;
}

namespace medium_ops {

// Lower-index coordinate derivative: mu=0 is n d_t, spatial ones are plain.
inline Jet1c d_low(const Jet2c& f, int mu, const MediumSample& s) {
  if (mu != 0) return deriv(f, mu);
  Jet1c r;
  r.v = Complex(s.n.v) * f.g[0];
  for (int a = 0; a < 4; ++a) r.g[a] = Complex(s.n.g[a]) * f.g[0] + Complex(s.n.v) * f.h[0][a];
  return r;
}
inline Complex d_low_v(const Jet1c& f, int mu, const MediumSample& s) {
  return mu == 0 ? Complex(s.n.v) * f.g[0] : f.g[static_cast<std::size_t>(mu)];
}

inline SpinorJet1 d_low(const SpinorJet& p, int mu, const MediumSample& s) {
  SpinorJet1 r;
  for (int c = 0; c < 6; ++c) r[static_cast<std::size_t>(c)] = d_low(p[static_cast<std::size_t>(c)], mu, s);
  return r;
}
inline CVec6 d_low_v(const SpinorJet1& p, int mu, const MediumSample& s) {
  CVec6 r;
  for (int c = 0; c < 6; ++c) r(c) = d_low_v(p[static_cast<std::size_t>(c)], mu, s);
  return r;
}

// Multiply by the block scalar phi_mu = diag(chi_mu I, eta_mu I).
inline SpinorJet1 phi_mul(const SpinorJet& p, int mu, const MediumSample& s) {
  SpinorJet1 r;
  for (int c = 0; c < 6; ++c) {
    const Jet1d& f = c < 3 ? s.chi_low[static_cast<std::size_t>(mu)]
                           : s.eta_low[static_cast<std::size_t>(mu)];
    r[static_cast<std::size_t>(c)] = mixed_cast<Complex>(f) * truncate(p[static_cast<std::size_t>(c)]);
  }
  return r;
}
inline CVec6 phi_mul_v(const CVec6& v, int mu, const MediumSample& s) {
  CVec6 r;
  for (int c = 0; c < 6; ++c)
    r(c) = Complex(c < 3 ? s.chi_low[static_cast<std::size_t>(mu)].v
                         : s.eta_low[static_cast<std::size_t>(mu)].v) *
           v(c);
  return r;
}

inline SpinorJet1 D_low(const SpinorJet& p, int mu, const MediumSample& s) {
  SpinorJet1 a = d_low(p, mu, s);
  SpinorJet1 b = phi_mul(p, mu, s);
  SpinorJet1 r;
  for (int c = 0; c < 6; ++c)
    r[static_cast<std::size_t>(c)] = a[static_cast<std::size_t>(c)] - b[static_cast<std::size_t>(c)];
  return r;
}
// Value-level second application of D_mu.
inline CVec6 D_low_v(const SpinorJet1& p, int mu, const MediumSample& s) {
  return d_low_v(p, mu, s) - phi_mul_v(values_of(p), mu, s);
}

inline SpinorJet1 mat_apply(const Mat6& m, const SpinorJet1& p) {
  SpinorJet1 r;
  for (int c = 0; c < 6; ++c) {
    Jet1c acc;
    for (int d = 0; d < 6; ++d) acc = acc + m(c, d) * p[static_cast<std::size_t>(d)];
    r[static_cast<std::size_t>(c)] = acc;
  }
  return r;
}
inline SpinorJet mat_apply(const Mat6& m, const SpinorJet& p) {
  SpinorJet r;
  for (int c = 0; c < 6; ++c) {
    Jet2c acc;
    for (int d = 0; d < 6; ++d) acc = acc + Jet2c(m(c, d)) * p[static_cast<std::size_t>(d)];
    r[static_cast<std::size_t>(c)] = acc;
  }
  return r;
}

// First-order Dirac operator i beta^mu D_mu (value level).
inline CVec6 dirac_apply(const SpinorJet& p, const MediumSample& s, const MatrixSet& ms) {
  CVec6 r = CVec6::Zero();
  for (int mu = 0; mu < 4; ++mu) r += ms.beta_upper(mu) * values_of(D_low(p, mu, s));
  return I * r;
}

// (beta^nu D_nu) psi keeping first derivatives, for second applications.
inline SpinorJet1 first_factor(const SpinorJet& p, const MediumSample& s, const MatrixSet& ms) {
  SpinorJet1 acc{};
  for (int mu = 0; mu < 4; ++mu) {
    SpinorJet1 t = mat_apply(ms.beta_upper(mu), D_low(p, mu, s));
    for (int c = 0; c < 6; ++c)
      acc[static_cast<std::size_t>(c)] = acc[static_cast<std::size_t>(c)] + t[static_cast<std::size_t>(c)];
  }
  return acc;
}

// (D_mu beta^mu) xi: the beta acts first, the connection subtraction happens
// in the final block position.
inline CVec6 second_factor(const SpinorJet1& xi, const MediumSample& s, const MatrixSet& ms) {
  CVec6 r = CVec6::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    SpinorJet1 bxi = mat_apply(ms.beta_upper(mu), xi);
    r += d_low_v(bxi, mu, s) - phi_mul_v(values_of(bxi), mu, s);
  }
  return r;
}

// Direct double application (D_mu beta^mu)(beta^nu D_nu) psi.
inline CVec6 second_order_direct(const SpinorJet& p, const MediumSample& s, const MatrixSet& ms) {
  return second_factor(first_factor(p, s, ms), s, ms);
}

// Omega psi from Eq-style X X^T / Y Y^T block operators: block component a of
// Omega psi = X_a sum_l X_l psi_l (operators compose; ordering immaterial
// because the connection is a spatial gradient).
inline CVec6 omega_apply(const SpinorJet& p, const MediumSample& s) {
  CVec6 r = CVec6::Zero();
  for (int block = 0; block < 2; ++block) {
    Jet1c inner;
    for (int l = 1; l < 4; ++l) {
      const int c = 3 * block + l - 1;
      inner = inner + D_low(p, l, s)[static_cast<std::size_t>(c)];
    }
    for (int a = 1; a < 4; ++a) {
      const int c = 3 * block + a - 1;
      const Jet1d& f = block == 0 ? s.chi_low[static_cast<std::size_t>(a)]
                                  : s.eta_low[static_cast<std::size_t>(a)];
      r(c) = d_low_v(inner, a, s) - Complex(f.v) * inner.v;
    }
  }
  return r;
}

// 2i Sigma . (phi x grad) psi, blockwise chi / eta.
inline CVec6 sigma_phi_grad(const SpinorJet& p, const MediumSample& s, const MatrixSet& ms) {
  CVec6 r = CVec6::Zero();
  for (int nn = 0; nn < 3; ++nn) {
    // blockwise vector (phi x grad)_n psi
    CVec6 w = CVec6::Zero();
    for (int l = 1; l < 4; ++l)
      for (int m = 1; m < 4; ++m) {
        const double e = levi_civita(nn, l - 1, m - 1);
        if (e == 0.0) continue;
        SpinorJet1 dm = d_low(p, m, s);
        for (int c = 0; c < 6; ++c) {
          const double f = c < 3 ? s.chi_low[static_cast<std::size_t>(l)].v
                                 : s.eta_low[static_cast<std::size_t>(l)].v;
          w(c) += e * f * dm[static_cast<std::size_t>(c)].v;
        }
      }
    r += ms.sigma[nn] * w;
  }
  return 2.0 * I * r;
}

// The spin-orbit group of the expanded second-order equation:
// 2i Sigma.(phi x grad) - alpha.[(grad ln n) d_0 + 2 (d_0 phi) - (grad ln n) phi_0].
inline CVec6 spin_orbit_apply(const SpinorJet& p, const MediumSample& s, const MatrixSet& ms) {
  CVec6 r = sigma_phi_grad(p, s, ms);
  const SpinorJet1 d0psi = d_low(p, 0, s);
  const CVec6 psi_v = values_of(p);
  const Vec3 gn = s.grad_ln_n();
  for (int l = 0; l < 3; ++l) {
    CVec6 term = gn(l) * values_of(d0psi);
    // (d_0 phi_l) evaluated, blockwise: n d_t of chi_l / eta_l.
    for (int c = 0; c < 6; ++c) {
      const Jet1d& f = c < 3 ? s.chi_low[static_cast<std::size_t>(l + 1)]
                             : s.eta_low[static_cast<std::size_t>(l + 1)];
      term(c) += Complex(2.0 * s.n.v * f.g[0]) * psi_v(c);
      const double phi0 = c < 3 ? s.chi_low[0].v : s.eta_low[0].v;
      term(c) -= Complex(gn(l) * phi0) * psi_v(c);
    }
    r -= ms.alpha[l] * term;
  }
  return r;
}

}  // namespace medium_ops

// Operator-identity suite at one point with one analytic test spinor.
inline CheckReport medium_second_order_check(const MediumProfile& profile, const Vec4& x,
                                             const SpinorJet& psi);

struct MediumResidual {
  double dirac = 0.0;
  double constraint_e = 0.0;
  double constraint_h = 0.0;
};

// Grid residual of i beta^nu (d_nu - phi_nu) psi for a medium-weighted field
// (standard representation), plus the two divergence constraints.
inline MediumResidual medium_dirac_residual(const SpinorGridField& field_in,
                                            const SpinorGridField& dt_in,
                                            const MediumProfile& profile) {
  if (!field_in.grid.same_layout(dt_in.grid) || field_in.rep != dt_in.rep)
    throw GridMismatch("field and time derivative live on different grids");
  const SpinorGridField field = convert_representation(field_in, Representation::Standard);
  const SpinorGridField dt = convert_representation(dt_in, Representation::Standard);
  const MatrixSet& ms = build_matrices(Representation::Standard);
  std::array<SpinorGridField, 3> d = {spatial_derivative(field, 0),
                                      spatial_derivative(field, 1),
                                      spatial_derivative(field, 2)};
  MediumResidual out;
  const Grid& g = field.grid;
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const Vec3 xs = g.point(i, j, k);
        const Vec4 x(field.time, xs(0), xs(1), xs(2));
        const MediumSample s = medium_connection(profile, x);
        const int n = g.index(i, j, k);
        CVec6 r = ms.beta0 * (s.n.v * dt.values[n] - medium_ops::phi_mul_v(field.values[n], 0, s));
        for (int l = 0; l < 3; ++l)
          r += ms.beta_upper(l + 1) *
               (d[l].values[n] - medium_ops::phi_mul_v(field.values[n], l + 1, s));
        out.dirac = std::max(out.dirac, max_abs(CVec6(I * r)));
        // constraints (div + chi).e and (div + eta).h on the weighted fields
        Complex ce = 0.0, ch = 0.0;
        for (int l = 0; l < 3; ++l) {
          CVec3 dE, dH;
          extract_sample(d[l].values[n], Representation::Standard, dE, dH);
          ce += dE(l);
          ch += dH(l);
        }
        CVec3 E, H;
        extract_sample(field.values[n], Representation::Standard, E, H);
        ce += s.chi_vec().cast<Complex>().dot(E);
        ch += s.eta_vec().cast<Complex>().dot(H);
        out.constraint_e = std::max(out.constraint_e, std::abs(ce));
        out.constraint_h = std::max(out.constraint_h, std::abs(ch));
      }
  return out;
}

struct EnvelopeResult {
  double m_eff = 0.0;
  double schrodinger_residual = 0.0;
  double dropped_terms = 0.0;
  double svea_ratio = 0.0;
};

// Schrodinger-like reduction at one point for a given envelope psi'. Requires
// chi = eta and chi_0 = eta_0 = 0; the dropped second-line terms justify the
// slowly-varying-envelope bound.
inline EnvelopeResult envelope_reduction(const MediumProfile& profile, const Vec4& x,
                                         const SpinorJet& psi_prime,
                                         double svea_threshold = 0.01) {
  const MediumSample s = medium_connection(profile, x);
  if ((s.chi_vec() - s.eta_vec()).norm() > 1e-12 || std::abs(s.chi_low[0].v) > 1e-12 ||
      std::abs(s.eta_low[0].v) > 1e-12)
    throw DomainViolation("envelope reduction requires chi = eta and chi_0 = eta_0 = 0");
  EnvelopeResult out;
  out.m_eff = s.m_eff();
  if (out.m_eff < 1e-12)
    throw DegenerateMass("effective mass vanishes; reduction is singular");
  const MatrixSet& ms = build_matrices(Representation::Standard);
  const Vec3 chi = s.chi_vec();
  const CVec6 psi_v = values_of(psi_prime);

  // SVEA ratios per Eq-style |d_t psi'| << |psi' m_eff / n|.
  double dt1 = 0.0, dt2 = 0.0, mag = 0.0;
  for (int c = 0; c < 6; ++c) {
    dt1 = std::max(dt1, std::abs(psi_prime[static_cast<std::size_t>(c)].g[0]));
    dt2 = std::max(dt2, std::abs(psi_prime[static_cast<std::size_t>(c)].h[0][0]));
    mag = std::max(mag, std::abs(psi_v(c)));
  }
  const double scale = mag * out.m_eff / s.n.v;
  out.svea_ratio = scale > 0.0 ? std::max(dt1, dt2) / scale : 0.0;
  if (out.svea_ratio > svea_threshold)
    throw SVEAViolated("envelope varies too fast for the reduction");

  // RHS of the reduced equation.
  CVec6 lap = CVec6::Zero();
  for (int l = 1; l < 4; ++l)
    for (int c = 0; c < 6; ++c) lap(c) += psi_prime[static_cast<std::size_t>(c)].h[l][l];
  CVec6 chi_grad = CVec6::Zero();
  double div_chi = 0.0;
  for (int l = 1; l < 4; ++l) {
    div_chi += s.chi_low[static_cast<std::size_t>(l)].g[l];
    for (int c = 0; c < 6; ++c)
      chi_grad(c) += Complex(chi(l - 1)) * psi_prime[static_cast<std::size_t>(c)].g[l];
  }
  const CVec6 omega = medium_ops::omega_apply(psi_prime, s);
  CVec6 alpha_chi = CVec6::Zero();
  for (int l = 0; l < 3; ++l) alpha_chi += chi(l) * (ms.alpha[l] * psi_v);

  // i n d_t psi' = (1/2m)[-lap + (div chi) + 2 chi.grad + Omega] psi'
  //               - m psi' + i (alpha.chi) psi'.
  // Derived by substituting psi = psi' exp(-i m t / n) (m, n frozen at the
  // point) into the exact second-order expansion and discarding the
  // second-order-in-time group reported in dropped_terms.
  const double m = out.m_eff;
  CVec6 rhs = (-lap + div_chi * psi_v + 2.0 * chi_grad + omega) / (2.0 * m) - m * psi_v +
              I * alpha_chi;
  CVec6 lhs = CVec6::Zero();
  for (int c = 0; c < 6; ++c)
    lhs(c) = I * Complex(s.n.v) * psi_prime[static_cast<std::size_t>(c)].g[0];
  out.schrodinger_residual = max_abs(CVec6(lhs - rhs));

  // Dropped terms n^2 d_t^2 psi' - 2 (alpha.chi) n d_t psi', scaled by 1/2m;
  // for any envelope, lhs - rhs = (dropped - exact second-order)/2m.
  CVec6 dropped = CVec6::Zero();
  for (int c = 0; c < 6; ++c)
    dropped(c) = Complex(s.n.v * s.n.v) * psi_prime[static_cast<std::size_t>(c)].h[0][0];
  CVec6 dtv;
  for (int c = 0; c < 6; ++c) dtv(c) = Complex(s.n.v) * psi_prime[static_cast<std::size_t>(c)].g[0];
  for (int l = 0; l < 3; ++l) dropped -= 2.0 * chi(l) * (ms.alpha[l] * dtv);
  out.dropped_terms = max_abs(dropped) / (2.0 * m);
  return out;
}

// ---- identity suite implementation ----

inline CheckReport medium_second_order_check(const MediumProfile& profile, const Vec4& x,
                                             const SpinorJet& psi) {
  using namespace medium_ops;
  const MediumSample s = medium_connection(profile, x);
  const MatrixSet& ms = build_matrices(Representation::Standard);
  CheckReport rep;
  rep.add("connection identity grad ln n = chi + eta", s.connection_identity());

  {  // (grad d0 - d0 grad) f = (grad ln n) d0 f, on each component
    double dev = 0.0;
    for (int c = 0; c < 6; ++c) {
      const Jet2c& f = psi[static_cast<std::size_t>(c)];
      const Jet1c d0f = d_low(f, 0, s);
      for (int i = 1; i < 4; ++i) {
        const Complex lhs = d0f.g[static_cast<std::size_t>(i)] -
                            d_low_v(deriv(f, i), 0, s);
        const Complex rhs = Complex(s.n.g[i] / s.n.v) * d0f.v;
        dev = std::max(dev, std::abs(lhs - rhs));
      }
    }
    rep.add("scaled time-derivative commutator", dev);
  }
  {  // (d0 phi - grad phi0) f expansion
    double dev = 0.0;
    const SpinorJet1 d0psi = d_low(psi, 0, s);
    const CVec6 psi_v = values_of(psi);
    for (int i = 1; i < 4; ++i) {
      const CVec6 lhs = d_low_v(phi_mul(psi, i, s), 0, s) -
                        d_low_v(phi_mul(psi, 0, s), i, s);
      CVec6 rhs;
      for (int c = 0; c < 6; ++c) {
        const Jet1d& fi = c < 3 ? s.chi_low[static_cast<std::size_t>(i)]
                                : s.eta_low[static_cast<std::size_t>(i)];
        const Jet1d& f0 = c < 3 ? s.chi_low[0] : s.eta_low[0];
        rhs(c) = Complex(2.0 * s.n.v * fi.g[0]) * psi_v(c) -
                 Complex(f0.v) * deriv(psi[static_cast<std::size_t>(c)], i).v +
                 Complex(fi.v) * d0psi[static_cast<std::size_t>(c)].v -
                 Complex(s.n.g[i] / s.n.v * f0.v) * psi_v(c);
      }
      dev = std::max(dev, max_abs(CVec6(lhs - rhs)));
    }
    rep.add("connection commutator expansion", dev);
  }
  {  // (D_i D_0 - D_0 D_i) psi = [(grad ln n)_i d_0 + 2(d_0 phi_i) - (grad ln n)_i phi_0] psi
    double dev = 0.0;
    const SpinorJet1 D0 = D_low(psi, 0, s);
    const CVec6 d0v = values_of(d_low(psi, 0, s));
    const CVec6 psi_v = values_of(psi);
    for (int i = 1; i < 4; ++i) {
      const CVec6 lhs = D_low_v(D0, i, s) - D_low_v(D_low(psi, i, s), 0, s);
      CVec6 rhs;
      for (int c = 0; c < 6; ++c) {
        const Jet1d& fi = c < 3 ? s.chi_low[static_cast<std::size_t>(i)]
                                : s.eta_low[static_cast<std::size_t>(i)];
        const double phi0 = c < 3 ? s.chi_low[0].v : s.eta_low[0].v;
        const double gln = s.n.g[i] / s.n.v;
        rhs(c) = Complex(gln) * d0v(c) + Complex(2.0 * s.n.v * fi.g[0]) * psi_v(c) -
                 Complex(gln * phi0) * psi_v(c);
      }
      dev = std::max(dev, max_abs(CVec6(lhs - rhs)));
    }
    rep.add("covariant time-space commutator", dev);
  }
  {  // (D.beta)(beta.D) = -lap + (div phi) + 2 phi.grad - phi.phi + Omega, blockwise
    CVec6 lhs = CVec6::Zero();
    {
      SpinorJet1 acc{};
      for (int l = 1; l < 4; ++l) {
        SpinorJet1 t = mat_apply(ms.beta_upper(l), D_low(psi, l, s));
        for (int c = 0; c < 6; ++c)
          acc[static_cast<std::size_t>(c)] =
              acc[static_cast<std::size_t>(c)] + t[static_cast<std::size_t>(c)];
      }
      for (int l = 1; l < 4; ++l) {
        SpinorJet1 b = mat_apply(ms.beta_upper(l), acc);
        lhs += d_low_v(b, l, s) - phi_mul_v(values_of(b), l, s);
      }
    }
    CVec6 rhs = omega_apply(psi, s);
    const CVec6 psi_v = values_of(psi);
    for (int c = 0; c < 6; ++c) {
      const Jet2c& f = psi[static_cast<std::size_t>(c)];
      double div_phi = 0.0, phi2 = 0.0;
      Complex phigrad = 0.0;
      for (int l = 1; l < 4; ++l) {
        const Jet1d& fl = c < 3 ? s.chi_low[static_cast<std::size_t>(l)]
                                : s.eta_low[static_cast<std::size_t>(l)];
        rhs(c) -= f.h[l][l];
        div_phi += fl.g[l];
        phi2 += fl.v * fl.v;
        phigrad += Complex(fl.v) * f.g[l];
      }
      rhs(c) += Complex(div_phi - phi2) * psi_v(c) + 2.0 * phigrad;
    }
    rep.add("spatial covariant square expansion", max_abs(CVec6(lhs - rhs)));
  }
  {  // assembly of the full second-order operator from its four pieces
    const CVec6 direct = second_order_direct(psi, s, ms);
    // D_0 D_0
    const CVec6 d00 = D_low_v(D_low(psi, 0, s), 0, s);
    // spatial square (reuse direct spatial computation)
    CVec6 sq = CVec6::Zero();
    {
      SpinorJet1 acc{};
      for (int l = 1; l < 4; ++l) {
        SpinorJet1 t = mat_apply(ms.beta_upper(l), D_low(psi, l, s));
        for (int c = 0; c < 6; ++c)
          acc[static_cast<std::size_t>(c)] =
              acc[static_cast<std::size_t>(c)] + t[static_cast<std::size_t>(c)];
      }
      for (int l = 1; l < 4; ++l) {
        SpinorJet1 b = mat_apply(ms.beta_upper(l), acc);
        sq += d_low_v(b, l, s) - phi_mul_v(values_of(b), l, s);
      }
    }
    // alpha . (D D_0 - D_0 D)
    CVec6 cross = CVec6::Zero();
    const SpinorJet1 D0 = D_low(psi, 0, s);
    for (int i = 1; i < 4; ++i) {
      const CVec6 comm = D_low_v(D0, i, s) - D_low_v(D_low(psi, i, s), 0, s);
      cross += ms.alpha[i - 1] * comm;
    }
    // (chi_mu - eta_mu) beta^mu D_0; the stored components are already the
    // lower-index ones.
    CVec6 tail = CVec6::Zero();
    const CVec6 D0v = values_of(D0);
    for (int mu = 0; mu < 4; ++mu) {
      const double cme = s.chi_low[static_cast<std::size_t>(mu)].v -
                         s.eta_low[static_cast<std::size_t>(mu)].v;
      tail += cme * (ms.beta_upper(mu) * D0v);
    }
    // The regrouping holds modulo the first-order operator: the cross-term
    // bookkeeping adds (chi_0 - eta_0)(beta^mu D_mu), which annihilates
    // solutions. Keep it explicit so the check is an operator identity.
    const CVec6 onshell =
        (s.chi_low[0].v - s.eta_low[0].v) * values_of(first_factor(psi, s, ms));
    rep.add("second-order operator assembly",
            max_abs(CVec6(direct - (d00 + sq - cross + tail - onshell))));
  }
  {  // full expansion: direct = orbital group + spin-orbit group, with the
     // orbital group written out in plain derivative terms
    const CVec6 direct = second_order_direct(psi, s, ms);
    const CVec6 so = spin_orbit_apply(psi, s, ms);
    const CVec6 psi_v = values_of(psi);
    const CVec6 d0v = values_of(d_low(psi, 0, s));
    // d_0 d_0 - (d_0 phi_0) - 2 phi_0 d_0 + phi_0^2  (expanded D_0 D_0)
    CVec6 rest = d_low_v(d_low(psi, 0, s), 0, s);
    for (int c = 0; c < 6; ++c) {
      const Jet1d& f0 = c < 3 ? s.chi_low[0] : s.eta_low[0];
      rest(c) += Complex(-s.n.v * f0.g[0] + f0.v * f0.v) * psi_v(c) -
                 Complex(2.0 * f0.v) * d0v(c);
    }
    // -lap + (div phi) + 2 phi.grad - phi.phi + Omega  (expanded spatial square)
    rest += omega_apply(psi, s);
    for (int c = 0; c < 6; ++c) {
      for (int l = 1; l < 4; ++l) {
        const Jet1d& fl = c < 3 ? s.chi_low[static_cast<std::size_t>(l)]
                                : s.eta_low[static_cast<std::size_t>(l)];
        rest(c) += -psi[static_cast<std::size_t>(c)].h[l][l] +
                   Complex(fl.g[l] - fl.v * fl.v) * psi_v(c) +
                   Complex(2.0 * fl.v) * psi[static_cast<std::size_t>(c)].g[l];
      }
    }
    // (chi_mu - eta_mu) beta^mu D_0
    const CVec6 D0v = values_of(D_low(psi, 0, s));
    for (int mu = 0; mu < 4; ++mu) {
      const double cme = s.chi_low[static_cast<std::size_t>(mu)].v -
                         s.eta_low[static_cast<std::size_t>(mu)].v;
      rest += cme * (ms.beta_upper(mu) * D0v);
    }
    rest -= (s.chi_low[0].v - s.eta_low[0].v) * values_of(first_factor(psi, s, ms));
    // the Sigma part of the spin-orbit group belongs to the spatial square
    rest -= sigma_phi_grad(psi, s, ms);
    rep.add("full second-order expansion", max_abs(CVec6(direct - (rest + so))));
    // spin-orbit group vanishes for gradient-free profiles
    if (s.chi_vec().norm() + s.eta_vec().norm() < 1e-15)
      rep.add("spin-orbit terms vanish (homogeneous)", max_abs(so));
  }
  return rep;
}

}  // namespace photospin

#endif
