#ifndef PHOTOSPIN_GRAVITY_HPP
#define PHOTOSPIN_GRAVITY_HPP

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "photospin/algebra.hpp"
#include "photospin/jet.hpp"
#include "photospin/report.hpp"

namespace photospin {

// Diagonal metric ds^2 = -a0^2 dt^2 + a1^2 dx1^2 + a2^2 dx2^2 + a3^2 dx3^2,
// each coefficient supplied with analytic first/second derivatives.
struct DiagonalMetric {
  std::array<std::function<Jet2d(const Vec4&)>, 4> a;

  std::array<Jet2d, 4> sample(const Vec4& x) const {
    std::array<Jet2d, 4> s;
    for (int mu = 0; mu < 4; ++mu) {
      s[static_cast<std::size_t>(mu)] = a[static_cast<std::size_t>(mu)](x);
      if (!(s[static_cast<std::size_t>(mu)].v > 0.0))
        throw DomainViolation("metric coefficient not positive at sample point");
    }
    return s;
  }

  static DiagonalMetric minkowski() {
    DiagonalMetric m;
    for (auto& f : m.a) f = [](const Vec4&) { return Jet2d(1.0); };
    return m;
  }
};

// Structure constants and connection coefficients at a point, all frame
// indices lowered with eta = diag(-1,1,1,1).
struct ConnectionData {
  std::array<std::array<std::array<double, 4>, 4>, 4> C{};      // C_{kappa lambda nu}
  std::array<std::array<std::array<double, 4>, 4>, 4> Gamma{};  // Gamma_{kappa lambda mu}

  double max_abs_entry() const {
    double m = 0.0;
    for (const auto& p : C)
      for (const auto& q : p)
        for (double v : q) m = std::max(m, std::abs(v));
    for (const auto& p : Gamma)
      for (const auto& q : p)
        for (double v : q) m = std::max(m, std::abs(v));
    return m;
  }
};

namespace detail {

// Rotation coefficients from the structure constants; antisymmetric in the
// first index pair, the last index is the frame derivative direction. The
// combination is fixed by matching the Christoffel/tetrad construction of the
// Levi-Civita spin connection for our C orientation [e_k, e_l] = C_kl^m e_m.
inline void fill_gamma(ConnectionData& cd) {
  for (int b = 0; b < 4; ++b)
    for (int c = 0; c < 4; ++c)
      for (int a = 0; a < 4; ++a)
        cd.Gamma[b][c][a] = (cd.C[b][c][a] - cd.C[c][a][b] - cd.C[a][b][c]) / 2.0;
}

}  // namespace detail

// Closed form for the orthonormal-frame structure constants of a diagonal
// metric with frame e_mu = a_mu^{-1} d_mu: the only nonzero components are
// C_{kappa lambda}^{lambda} = -a_kappa^{-1} d_kappa ln a_lambda (kappa !=
// lambda) plus antisymmetry, lowered with eta.
inline ConnectionData connection_coefficients(const DiagonalMetric& metric, const Vec4& x) {
  const auto a = metric.sample(x);
  ConnectionData cd;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      if (k == l) continue;
      const double up = -a[static_cast<std::size_t>(l)].g[k] /
                        (a[static_cast<std::size_t>(k)].v * a[static_cast<std::size_t>(l)].v);
      const double low = minkowski_eta(l, l) * up;
      cd.C[k][l][l] += low;
      cd.C[l][k][l] -= low;
    }
  detail::fill_gamma(cd);
  return cd;
}

// Brute-force oracle: evaluate the commutator formula for a general diagonal
// vierbein V_a^mu = delta_a^mu / a_a directly, then convert the coordinate
// component to the frame one and lower with eta.
inline ConnectionData connection_brute_force(const DiagonalMetric& metric, const Vec4& x) {
  const auto a = metric.sample(x);
  // V[b][mu] as a jet (value and coordinate derivatives).
  std::array<std::array<Jet2d, 4>, 4> V;
  for (int b = 0; b < 4; ++b)
    for (int mu = 0; mu < 4; ++mu)
      V[static_cast<std::size_t>(b)][static_cast<std::size_t>(mu)] =
          (b == mu) ? inverse(a[static_cast<std::size_t>(b)]) : Jet2d(0.0);
  ConnectionData cd;
  for (int b = 0; b < 4; ++b)
    for (int c = 0; c < 4; ++c)
      for (int mu = 0; mu < 4; ++mu) {
        // coefficient of d_mu in [e_b, e_c]
        double coeff = 0.0;
        for (int nu = 0; nu < 4; ++nu)
          coeff += V[static_cast<std::size_t>(b)][static_cast<std::size_t>(nu)].v *
                       V[static_cast<std::size_t>(c)][static_cast<std::size_t>(mu)].g[nu] -
                   V[static_cast<std::size_t>(c)][static_cast<std::size_t>(nu)].v *
                       V[static_cast<std::size_t>(b)][static_cast<std::size_t>(mu)].g[nu];
        // d_mu = a_mu e_mu, then lower the frame index with eta.
        cd.C[b][c][mu] =
            minkowski_eta(mu, mu) * coeff * a[static_cast<std::size_t>(mu)].v;
      }
  detail::fill_gamma(cd);
  return cd;
}

// Relative agreement of the closed form with the brute-force oracle.
inline CheckReport connection_check(const DiagonalMetric& metric, const Vec4& x) {
  const ConnectionData closed = connection_coefficients(metric, x);
  const ConnectionData brute = connection_brute_force(metric, x);
  const double scale = std::max(1.0, brute.max_abs_entry());
  double dc = 0.0, dg = 0.0, anti = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        dc = std::max(dc, std::abs(closed.C[i][j][k] - brute.C[i][j][k]));
        dg = std::max(dg, std::abs(closed.Gamma[i][j][k] - brute.Gamma[i][j][k]));
        anti = std::max(anti, std::abs(closed.C[i][j][k] + closed.C[j][i][k]));
        anti = std::max(anti, std::abs(closed.Gamma[i][j][k] + closed.Gamma[j][i][k]));
      }
  CheckReport rep;
  rep.add("structure constants vs commutator oracle", dc / scale);
  rep.add("connection coefficients vs commutator oracle", dg / scale);
  rep.add("antisymmetry in the first index pair", anti / scale);
  return rep;
}

// ---- Schwarzschild charts ----

enum class Chart { Standard, Isotropic };

struct SchwarzschildParams {
  double rs = 1.0;
  Chart chart = Chart::Standard;
};

// Standard chart coordinates (t, r, theta, phi); isotropic chart coordinates
// (t, x1, x2, x3) with rho = |x|.
inline DiagonalMetric schwarzschild_metric(const SchwarzschildParams& p) {
  if (!(p.rs > 0.0)) throw DomainViolation("Schwarzschild radius must be positive");
  DiagonalMetric m;
  const double rs = p.rs;
  if (p.chart == Chart::Standard) {
    auto factor = [rs](const Vec4& x) {
      if (!(x(1) > rs)) throw DomainViolation("standard chart requires r > rs");
      const Jet2d r = Jet2d::variable(x(1), 1);
      return 1.0 - rs * inverse(r);
    };
    m.a[0] = [factor](const Vec4& x) { return sqrt(factor(x)); };
    m.a[1] = [factor](const Vec4& x) { return inverse(sqrt(factor(x))); };
    m.a[2] = [](const Vec4& x) { return Jet2d::variable(x(1), 1); };
    m.a[3] = [](const Vec4& x) {
      return Jet2d::variable(x(1), 1) * sin(Jet2d::variable(x(2), 2));
    };
  } else {
    auto srho = [rs](const Vec4& x) {
      const double rho = x.tail<3>().norm();
      if (!(rho > rs / 4.0)) throw DomainViolation("isotropic chart requires rho > rs/4");
      Jet2d r2(0.0);
      for (int l = 1; l < 4; ++l) {
        const Jet2d xl = Jet2d::variable(x(l), l);
        r2 = r2 + xl * xl;
      }
      return (rs / 4.0) * inverse(sqrt(r2));  // s = rs / 4 rho
    };
    m.a[0] = [srho](const Vec4& x) {
      const Jet2d s = srho(x);
      return (1.0 - s) * inverse(1.0 + s);
    };
    for (int l = 1; l < 4; ++l)
      m.a[static_cast<std::size_t>(l)] = [srho](const Vec4& x) {
        const Jet2d s = srho(x);
        return (1.0 + s) * (1.0 + s);
      };
  }
  return m;
}

// Areal radius r = rho (1 + rs/4rho)^2 of the isotropic radial coordinate.
inline double areal_radius(double rho, double rs) {
  const double s = rs / (4.0 * rho);
  return rho * (1.0 + s) * (1.0 + s);
}

// ---- curved-spacetime first-order operator ----

namespace curved_ops {

inline CVec6 jet_values(const SpinorJet& psi) { return values_of(psi); }

inline CVec6 jet_deriv(const SpinorJet& psi, int mu) {
  CVec6 v;
  for (int c = 0; c < 6; ++c) v(c) = psi[static_cast<std::size_t>(c)].g[mu];
  return v;
}

// Compact covariant form i beta^mu (e_mu psi) - (1/2) Gamma_{kappa lambda
// mu} beta^mu S^{kappa lambda} psi. The sign of the spin term together with
// the rotation-coefficient combination above is fixed by requiring the
// conformal reduction of the isotropic chart to hold exactly.
inline CVec6 apply_compact(const DiagonalMetric& metric, Representation rep, const Vec4& x,
                           const SpinorJet& psi) {
  const auto a = metric.sample(x);
  const ConnectionData cd = connection_coefficients(metric, x);
  const MatrixSet& ms = build_matrices(rep);
  const auto S = spin_generators(rep);
  const CVec6 v = jet_values(psi);
  CVec6 out = CVec6::Zero();
  for (int mu = 0; mu < 4; ++mu) {
    out += (I / a[static_cast<std::size_t>(mu)].v) * (ms.beta_upper(mu) * jet_deriv(psi, mu));
    Mat6 spin = Mat6::Zero();
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l)
        if (cd.Gamma[k][l][mu] != 0.0) spin += cd.Gamma[k][l][mu] * S[k][l];
    out -= 0.5 * (ms.beta_upper(mu) * (spin * v));
  }
  return out;
}

// Intermediate expanded form: the spin term written out per derivative axis,
// a_l^{-1}[i beta^l d_l - beta^0 S^{l0} d_l ln a0 + sum_m beta^m S^{lm} d_l ln a_m].
inline CVec6 apply_expanded_spin(const DiagonalMetric& metric, Representation rep, const Vec4& x,
                                 const SpinorJet& psi) {
  const auto a = metric.sample(x);
  const MatrixSet& ms = build_matrices(rep);
  const auto S = spin_generators(rep);
  const CVec6 v = jet_values(psi);
  auto dln = [&](int l, int mu) {
    return a[static_cast<std::size_t>(mu)].g[l] /
           (a[static_cast<std::size_t>(l)].v * a[static_cast<std::size_t>(mu)].v);
  };
  CVec6 out = (I / a[0].v) * (ms.beta0 * jet_deriv(psi, 0));
  for (int l = 1; l < 4; ++l) {
    CVec6 term = I * (ms.beta_upper(l) * jet_deriv(psi, l)) / a[static_cast<std::size_t>(l)].v;
    term -= dln(l, 0) * (ms.beta0 * (S[l][0] * v));
    for (int m = 1; m < 4; ++m) {
      if (m == l) continue;
      term += dln(l, m) * (ms.beta_upper(m) * (S[l][m] * v));
    }
    out += term;
  }
  return out;
}

// Fully reduced (static-metric) form: per spatial axis l with the cyclic
// successors m = l+1, n = l+2, the scalar drag is d_l ln(a0 a_m) on i beta^l
// and the residual spin term is a_l^{-1} beta^n Sigma^m d_l ln(a_m/a_n).
inline CVec6 apply_reduced(const DiagonalMetric& metric, Representation rep, const Vec4& x,
                           const SpinorJet& psi) {
  const auto a = metric.sample(x);
  const MatrixSet& ms = build_matrices(rep);
  const CVec6 v = jet_values(psi);
  auto dln = [&](int l, int mu) {  // a_l^{-1} d_l ln a_mu
    return a[static_cast<std::size_t>(mu)].g[l] /
           (a[static_cast<std::size_t>(l)].v * a[static_cast<std::size_t>(mu)].v);
  };
  CVec6 out = (I / a[0].v) * (ms.beta0 * jet_deriv(psi, 0));
  for (int l = 1; l < 4; ++l) {
    const int m = 1 + (l % 3), n = 1 + ((l + 1) % 3);
    const double drag = dln(l, 0) + dln(l, m);
    out += I * (ms.beta_upper(l) *
                (jet_deriv(psi, l) / a[static_cast<std::size_t>(l)].v + drag * v));
    out += (dln(l, m) - dln(l, n)) * (ms.beta_upper(n) * (ms.sigma[m - 1] * v));
  }
  return out;
}

}  // namespace curved_ops

inline double refractive_index_eta(double rho, double rs);

// Agreement of the three operator forms on one analytic spinor sample.
inline CheckReport curved_operator_check(const DiagonalMetric& metric, Representation rep,
                                         const Vec4& x, const SpinorJet& psi) {
  using namespace curved_ops;
  const CVec6 c = apply_compact(metric, rep, x, psi);
  CheckReport rep_out;
  rep_out.add("compact vs per-axis spin expansion",
              max_abs(CVec6(c - apply_expanded_spin(metric, rep, x, psi))));
  rep_out.add("compact vs reduced drag form",
              max_abs(CVec6(c - apply_reduced(metric, rep, x, psi))));
  return rep_out;
}

// Chart-specific reductions of the Schwarzschild operator on one sample.
// Standard chart: i d_t psi equals the alpha-form right-hand side with the
// radial drag 1/r, the rs/2r^2 term, and the cot(theta) spin term.
// Isotropic chart: the first-order form with the refractive index and the
// conformal reduction psi = varpi^{-1/2} phi -> i beta^mu d'_mu phi.
inline CheckReport schwarzschild_operator_check(const SchwarzschildParams& p, const Vec4& x,
                                                const SpinorJet& psi) {
  using namespace curved_ops;
  const DiagonalMetric met = schwarzschild_metric(p);
  const MatrixSet& ms = build_matrices(Representation::Standard);
  const auto a = met.sample(x);
  const CVec6 v = jet_values(psi);
  const CVec6 op = apply_compact(met, Representation::Standard, x, psi);
  CheckReport rep;
  if (p.chart == Chart::Standard) {
    const double rs = p.rs, r = x(1), th = x(2);
    const double fct = 1.0 - rs / r, sf = std::sqrt(fct);
    const double ct = std::cos(th) / std::sin(th);
    CVec6 rhs = -I * fct * (ms.alpha[0] * (jet_deriv(psi, 1) + v / r));
    rhs += -I * sf / r * (ms.alpha[1] * (jet_deriv(psi, 2) + ct * v));
    rhs += -I * sf / (r * std::sin(th)) * (ms.alpha[2] * jet_deriv(psi, 3));
    rhs += -I * rs / (2.0 * r * r) * (ms.alpha[0] * v);
    rhs += -sf * ct / r * (ms.alpha[0] * (ms.sigma[2] * v));
    const CVec6 lhs = I * jet_deriv(psi, 0);
    rep.add("standard-chart alpha form",
            max_abs(CVec6(a[0].v * (ms.beta0 * op) - (lhs - rhs))));
  } else {
    const double rs = p.rs, rho = x.tail<3>().norm();
    const double eta = refractive_index_eta(rho, rs);
    const double s = rs / (4.0 * rho);
    // Pi = grad ln sqrt(varpi), varpi = (a0 a)^2 = ((1-s)(1+s))^2
    const double dlnw = (-s / rho) * (-1.0 / (1.0 - s) + 1.0 / (1.0 + s));
    const Vec3 Pi = x.tail<3>() / rho * dlnw;
    CVec6 lhs170 = I * eta * (ms.beta0 * jet_deriv(psi, 0));
    for (int l = 1; l < 4; ++l)
      lhs170 += I * (ms.beta_upper(l) * (jet_deriv(psi, l) + Pi(l - 1) * v));
    rep.add("isotropic refractive form", max_abs(CVec6(a[1].v * op - lhs170)));
    // conformal reduction: psi2 = varpi^{-1/2} psi, compare with flat-form of psi
    Jet2d r2(0.0);
    for (int l = 1; l < 4; ++l) {
      const Jet2d xl = Jet2d::variable(x(l), l);
      r2 = r2 + xl * xl;
    }
    const Jet2d sj = (rs / 4.0) * inverse(sqrt(r2));
    const Jet2d wih = inverse((1.0 - sj) * (1.0 + sj));
    SpinorJet psi2;
    for (int c = 0; c < 6; ++c) {
      Jet2c wj;
      wj.v = Complex(wih.v);
      for (int aa = 0; aa < 4; ++aa) {
        wj.g[aa] = Complex(wih.g[aa]);
        for (int bb = 0; bb < 4; ++bb) wj.h[aa][bb] = Complex(wih.h[aa][bb]);
      }
      psi2[static_cast<std::size_t>(c)] = psi[static_cast<std::size_t>(c)] * wj;
    }
    const CVec6 op2 = apply_compact(met, Representation::Standard, x, psi2);
    CVec6 flat = I * eta * (ms.beta0 * jet_deriv(psi, 0));
    for (int l = 1; l < 4; ++l) flat += I * (ms.beta_upper(l) * jet_deriv(psi, l));
    rep.add("conformal reduction", max_abs(CVec6(a[1].v * op2 - wih.v * flat)));
  }
  return rep;
}

// ---- orbit machinery ----

struct OrbitDiagnostics {
  double residual = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  // roots the physical-branch selection discarded (omega^2 values)
  std::vector<double> discarded;
};

struct OrbitResult {
  double radius = 0.0;
  double omega_sq_plus = 0.0;
  double omega_sq_minus = 0.0;
  double m_or_h = 0.0;
  OrbitDiagnostics diagnostics;
};

// Bracketed maximizer of a smooth scalar: scan for a derivative sign change
// around the sampled maximum, bisect, then Newton-polish with the analytic
// second derivative. f maps a radial jet (variable index 1) to a value jet.
template <typename F>
inline double find_stationary_max(const F& f, double lo, double hi, double tol,
                                  OrbitDiagnostics* diag = nullptr) {
  const int N = 2000;
  auto dval = [&](double r) { return f(Jet2d::variable(r, 1)); };
  int best = -1;
  double best_v = -std::numeric_limits<double>::infinity();
  std::vector<double> rg(N + 1), der(N + 1), val(N + 1);
  for (int i = 0; i <= N; ++i) {
    const double r = lo + (hi - lo) * i / N;
    const Jet2d y = dval(r);
    rg[static_cast<std::size_t>(i)] = r;
    val[static_cast<std::size_t>(i)] = y.v;
    der[static_cast<std::size_t>(i)] = y.g[1];
    if (y.v > best_v) {
      best_v = y.v;
      best = i;
    }
  }
  int ia = -1;
  for (int i : {best - 1, best}) {
    if (i < 0 || i + 1 > N) continue;
    if (der[static_cast<std::size_t>(i)] > 0.0 && der[static_cast<std::size_t>(i + 1)] < 0.0) {
      ia = i;
      break;
    }
  }
  if (ia < 0) {
    int flips = 0;
    for (int i = 0; i < N; ++i)
      if (der[static_cast<std::size_t>(i)] * der[static_cast<std::size_t>(i + 1)] < 0.0) ++flips;
    throw RootNotBracketed("no interior maximum: derivative sign changes found = " +
                           std::to_string(flips));
  }
  double a = rg[static_cast<std::size_t>(ia)], b = rg[static_cast<std::size_t>(ia + 1)];
  if (diag != nullptr) {
    diag->bracket_lo = a;
    diag->bracket_hi = b;
  }
  int iters = 0;
  for (; iters < 60 && (b - a) > tol; ++iters) {
    const double mid = 0.5 * (a + b);
    (dval(mid).g[1] > 0.0 ? a : b) = mid;
  }
  double r = 0.5 * (a + b);
  for (int it = 0; it < 50; ++it, ++iters) {
    const Jet2d y = dval(r);
    const double step = y.g[1] / y.h[1][1];
    const double rn = r - step;
    if (!(rn > a - (b - a) && rn < b + (b - a))) break;
    r = rn;
    if (std::abs(step) < tol) break;
  }
  if (diag != nullptr) {
    diag->iterations = iters;
    diag->residual = std::abs(dval(r).g[1]);
  }
  return r;
}

// Classical null-geodesic effective potential V_eff = (h^2/r^2)(1 - rs/r).
inline double effective_potential(double r, double rs, double h) {
  return h * h / (r * r) * (1.0 - rs / r);
}

// Right-hand side of the orbit shape equation, 3 rs u^2 / 2.
inline double shape_equation_rhs(double u, double rs) { return 1.5 * rs * u * u; }

inline OrbitResult classical_orbit(const SchwarzschildParams& p, double h) {
  if (!(h > 0.0)) throw DomainViolation("angular momentum h must be positive");
  const double rs = p.rs;
  OrbitResult out;
  out.m_or_h = h;
  out.radius = find_stationary_max(
      [&](const Jet2d& r) { return h * h * inverse(r * r) * (1.0 - rs * inverse(r)); },
      1.001 * rs, 20.0 * rs, 1e-12 * rs, &out.diagnostics);
  out.omega_sq_plus = out.omega_sq_minus = effective_potential(out.radius, rs, h);
  return out;
}

// Spin-averaged dispersion on a standard-chart circular orbit:
// omega^2 = (m^2/r^2)(1 - rs/r) - ((2r - rs)/2r^2)^2.
inline double omega_sq_average(double r, double rs, double m) {
  const double c3 = std::sqrt(1.0 - rs / r) * m / r;
  const double c1 = (2.0 * r - rs) / (2.0 * r * r);
  return c3 * c3 - c1 * c1;
}

struct DeterminantCheck {
  // cubic det coefficients in ascending powers of omega, and the closed form
  Eigen::Vector4d numeric, closed;
  double deviation = 0.0;
};

// The equatorial circular ansatz reduces the first-order system to
// (omega + i c1 tau_1 - c3 tau_3) f = 0 per chirality block; the numeric
// determinant cubic is compared with omega(omega^2 - c3^2 + c1^2).
inline DeterminantCheck standard_determinant_check(double r, double rs, double m) {
  if (!(r > rs)) throw DomainViolation("circular orbit requires r > rs");
  const double c3 = std::sqrt(1.0 - rs / r) * m / r;
  const double c1 = 1.0 / r - rs / (2.0 * r * r);
  const auto& t = tau();
  DeterminantCheck out;
  Eigen::Matrix4d V;
  Eigen::Vector4d rhs;
  const double scale = std::max(1.0, std::abs(c3) + std::abs(c1));
  for (int s = 0; s < 4; ++s) {
    const double w = scale * (2 * s - 3) * 0.43;
    double p = 1.0;
    for (int j = 0; j < 4; ++j) {
      V(s, j) = p;
      p *= w;
    }
    const Mat3 mm = w * Mat3::Identity() + I * c1 * t[0] - c3 * t[2];
    rhs(s) = mm.determinant().real();
  }
  out.numeric = V.fullPivLu().solve(rhs);
  out.closed << 0.0, c1 * c1 - c3 * c3, 0.0, 1.0;
  out.deviation =
      (out.numeric - out.closed).cwiseAbs().maxCoeff() / std::max(1.0, scale * scale);
  return out;
}

// Extremal radius of the spin-averaged omega^2(r), closed form
// r = 3rs/4 + rs sqrt(9(h^2-1)^2 + 8(h^2-1)) / (4(h^2-1)).
inline double extremal_radius_average(double rs, double h) {
  const double q = h * h - 1.0;
  if (!(q > 0.0)) throw InvalidAngularMomentum("spin-averaged extremum requires h^2 > 1");
  return 0.75 * rs + rs * std::sqrt(9.0 * q * q + 8.0 * q) / (4.0 * q);
}

inline OrbitResult circular_orbit_standard(const SchwarzschildParams& p, int m,
                                           double r = -1.0) {
  if (m * m < 4) throw InvalidAngularMomentum("standard-chart orbit requires m^2 >= 4");
  const double rs = p.rs;
  if (r < 0.0) r = 1.5 * rs;
  if (!(r > rs)) throw DomainViolation("circular orbit requires r > rs");
  OrbitResult out;
  out.m_or_h = m;
  out.radius = r;
  const double w2 = omega_sq_average(r, rs, std::abs(static_cast<double>(m)));
  out.omega_sq_plus = out.omega_sq_minus = w2;
  const DeterminantCheck det = standard_determinant_check(r, rs, std::abs(m));
  out.diagnostics.residual = det.deviation;
  out.diagnostics.discarded = {0.0};  // the omega = 0 longitudinal root
  return out;
}

// Isotropic-chart radial drag A_rho and effective refractive index eta.
inline double isotropic_a_rho(double rho, double rs) {
  if (!(rho > rs / 4.0)) throw DomainViolation("isotropic chart requires rho > rs/4");
  const double s = rs / (4.0 * rho);
  return -rs / (8.0 * rho * rho) * (3.0 / (1.0 + s) + 1.0 / (1.0 - s));
}

inline double refractive_index_eta(double rho, double rs) {
  if (!(rho > rs / 4.0)) throw DomainViolation("isotropic chart requires rho > rs/4");
  const double s = rs / (4.0 * rho);
  const double op = 1.0 + s;
  return op * op * op / (1.0 - s);
}

// Helicity-resolved dispersion on an isotropic circular orbit. The raw
// eigenvalue condition gives omega^2 = m^2/(eta^2 rho^2) +- (2m/(eta^2
// rho)) A_rho; since A_rho < 0 the branch containing m(m+1) at the photon
// sphere is reported as omega_sq_plus (spin projection +1).
inline OrbitResult circular_orbit_isotropic(const SchwarzschildParams& p, int m,
                                            double rho = -1.0) {
  if (m * m < 4) throw InvalidAngularMomentum("isotropic orbit requires m^2 >= 4");
  const double rs = p.rs;
  if (rho < 0.0) rho = (2.0 + std::sqrt(3.0)) * rs / 4.0;
  const double eta = refractive_index_eta(rho, rs);
  const double arho = isotropic_a_rho(rho, rs);
  const double md = std::abs(static_cast<double>(m));
  const double base = md * md / (eta * eta * rho * rho);
  const double split = 2.0 * md * arho / (eta * eta * rho);
  OrbitResult out;
  out.m_or_h = m;
  out.radius = rho;
  out.omega_sq_plus = base - split;   // m(m+1) branch (A_rho < 0)
  out.omega_sq_minus = base + split;  // m(m-1) branch
  out.diagnostics.discarded = {base};  // eta^2 omega^2 = m^2/rho^2 longitudinal root
  return out;
}

// omega_-+^2(rho) = P(rho) [h -+ g(rho)] with P = h(1-s)^2 / (rho^2 (1+s)^6),
// g = 3rs/(4rho+rs) + rs/(4rho-rs); the upper sign is the branch written
// with the minus sign inside the bracket.
inline Jet2d helicity_omega_sq(const Jet2d& rho, double rs, double h, int sign) {
  const Jet2d s = (rs / 4.0) * inverse(rho);
  const Jet2d om = 1.0 - s, op = 1.0 + s;
  const Jet2d P = h * om * om * inverse(rho * rho * op * op * op * op * op * op);
  const Jet2d g = 3.0 * rs * inverse(4.0 * rho + rs) + rs * inverse(4.0 * rho - rs);
  return sign > 0 ? P * (h - g) : P * (h + g);
}

struct HelicityRadii {
  double rho_plus = 0.0;
  double rho_minus = 0.0;
  double rho_zero = 0.0;
  OrbitDiagnostics diag_plus, diag_minus;
};

// Extremize each helicity branch on (rs/4, 20 rs]; the uncorrected radius is
// rho_0 = (2 + sqrt 3) rs / 4.
inline HelicityRadii helicity_split_radii(const SchwarzschildParams& p, double h) {
  if (!(h >= 2.0)) throw InvalidAngularMomentum("helicity split requires h >= 2");
  const double rs = p.rs;
  HelicityRadii out;
  out.rho_zero = (2.0 + std::sqrt(3.0)) * rs / 4.0;
  const double lo = rs / 4.0 * (1.0 + 1e-9), hi = 20.0 * rs, tol = 1e-12 * rs;
  out.rho_plus = find_stationary_max(
      [&](const Jet2d& r) { return helicity_omega_sq(r, rs, h, +1); }, lo, hi, tol,
      &out.diag_plus);
  out.rho_minus = find_stationary_max(
      [&](const Jet2d& r) { return helicity_omega_sq(r, rs, h, -1); }, lo, hi, tol,
      &out.diag_minus);
  return out;
}

}  // namespace photospin

#endif
