#ifndef PHOTOSPIN_SYMMETRY_HPP
#define PHOTOSPIN_SYMMETRY_HPP

#include <cmath>
#include <functional>

#include "photospin/field.hpp"
#include "photospin/grid.hpp"
#include "photospin/report.hpp"

namespace photospin {

// Node map realizing x -> -x; requires a grid closed under reflection.
inline std::function<int(int, int)> reflection_map(const Grid& g) {
  if (g.periodic && g.origin.norm() < 1e-14)
    return [dims = g.dims](int idx, int axis) { return (dims[axis] - idx) % dims[axis]; };
  bool centered = true;
  for (int d = 0; d < 3; ++d) {
    if (g.dims[d] % 2 == 0) centered = false;
    if (std::abs(g.origin(d) + 0.5 * (g.dims[d] - 1) * g.spacing(d)) > 1e-12)
      centered = false;
  }
  if (centered)
    return [dims = g.dims](int idx, int axis) { return dims[axis] - 1 - idx; };
  throw AsymmetricGrid("grid is not closed under x -> -x");
}

// P: psi(t,x) -> beta0 psi(t,-x).
inline SpinorGridField parity(const SpinorGridField& f) {
  auto refl = reflection_map(f.grid);
  const MatrixSet& ms = build_matrices(f.rep);
  SpinorGridField out = make_field(f.grid, f.rep, f.time);
  for (int i = 0; i < f.grid.dims[0]; ++i)
    for (int j = 0; j < f.grid.dims[1]; ++j)
      for (int k = 0; k < f.grid.dims[2]; ++k)
        out.at(i, j, k) = ms.beta0 * f.at(refl(i, 0), refl(j, 1), refl(k, 2));
  return out;
}

// Coefficient action of parity: b(k,1) -> b(-k,1), b(k,2) -> -b(-k,2).
inline ModeCoefficients parity(const ModeCoefficients& c) {
  ModeCoefficients out;
  for (const ModeEntry& m : c.entries)
    out.entries.push_back({-m.k, m.i, m.i == 1 ? m.b : -m.b});
  return out;
}

// T: antilinear, t -> -t; sample data conjugated.
inline SpinorGridField time_reversal(const SpinorGridField& f) {
  SpinorGridField out = f;
  out.time = -f.time;
  for (auto& v : out.values) v = v.conjugate();
  return out;
}

// Coefficient action of T: amplitudes conjugated, b(k,1) -> b(-k,1),
// b(k,2) -> -b(-k,2).
inline ModeCoefficients time_reversal(const ModeCoefficients& c) {
  ModeCoefficients out;
  for (const ModeEntry& m : c.entries)
    out.entries.push_back({-m.k, m.i, m.i == 1 ? std::conj(m.b) : -std::conj(m.b)});
  return out;
}

// C: psi -> beta0 psi*; identity on fields assembled from real E, H.
inline SpinorGridField charge_conjugation(const SpinorGridField& f) {
  const MatrixSet& ms = build_matrices(f.rep);
  SpinorGridField out = f;
  for (auto& v : out.values) v = ms.beta0 * v.conjugate();
  return out;
}

// psi -> exp(i beta5 theta) psi = (cos theta + i beta5 sin theta) psi.
inline SpinorGridField chiral_transform(const SpinorGridField& f, double theta) {
  const MatrixSet& ms = build_matrices(f.rep);
  const Mat6 op = std::cos(theta) * Mat6::Identity() + I * std::sin(theta) * ms.beta5;
  SpinorGridField out = f;
  for (auto& v : out.values) v = op * v;
  return out;
}

inline void chirality_projectors(const SpinorGridField& f, SpinorGridField& right,
                                 SpinorGridField& left) {
  const MatrixSet& ms = build_matrices(f.rep);
  const Mat6 pr = 0.5 * (Mat6::Identity() + ms.beta5);
  const Mat6 pl = 0.5 * (Mat6::Identity() - ms.beta5);
  right = f;
  left = f;
  for (std::size_t n = 0; n < f.values.size(); ++n) {
    right.values[n] = pr * f.values[n];
    left.values[n] = pl * f.values[n];
  }
}

// Axial current psi-bar beta^mu beta5 psi; identically zero on fields built
// from real E and H. Returns the max modulus over nodes and mu.
inline double axial_current_max(const SpinorGridField& f) {
  const MatrixSet& ms = build_matrices(f.rep);
  std::array<Mat6, 4> op;
  for (int mu = 0; mu < 4; ++mu) op[mu] = ms.beta0 * ms.beta_upper(mu) * ms.beta5;
  double dev = 0.0;
  for (const auto& psi : f.values)
    for (int mu = 0; mu < 4; ++mu)
      dev = std::max(dev, std::abs((psi.adjoint() * op[mu] * psi)(0, 0)));
  return dev;
}

// psi-bar (i beta^mu d_mu psi): vanishes pointwise on exact solutions.
inline double pseudo_lagrangian_max(const SpinorGridField& f, const SpinorGridField& dt) {
  if (!f.grid.same_layout(dt.grid) || f.rep != dt.rep)
    throw GridMismatch("field and time derivative live on different grids");
  const MatrixSet& ms = build_matrices(f.rep);
  std::array<SpinorGridField, 3> d = {spatial_derivative(f, 0), spatial_derivative(f, 1),
                                      spatial_derivative(f, 2)};
  double dev = 0.0;
  for (int n = 0; n < f.grid.size(); ++n) {
    CVec6 eq = I * (ms.beta_upper(0) * dt.values[n]);
    for (int l = 0; l < 3; ++l) eq += I * (ms.beta_upper(l + 1) * d[l].values[n]);
    dev = std::max(dev, std::abs((f.values[n].adjoint() * ms.beta0 * eq)(0, 0)));
  }
  return dev;
}

// For spatial index pairs the bracket i(beta_nu delta_{rho mu} - beta_mu
// delta_{rho nu}) + (beta^rho S_{mu nu} - S_{mu nu} beta^rho) vanishes as a
// matrix identity, making the spatial certificate entries zero off-shell; the
// time-space entries need the field equation and transversality instead.
inline double invariance_bracket_identity(Representation rep) {
  const MatrixSet& ms = build_matrices(rep);
  const auto S = spin_generators_lower(rep);
  double dev = 0.0;
  for (int mu = 1; mu < 4; ++mu)
    for (int nu = 1; nu < 4; ++nu)
      for (int rho = 0; rho < 4; ++rho) {
        Mat6 m = ms.beta_upper(rho) * S[mu][nu] - S[mu][nu] * ms.beta_upper(rho);
        if (rho == mu) m += I * ms.beta_lower(nu);
        if (rho == nu) m -= I * ms.beta_lower(mu);
        dev = std::max(dev, max_abs(m));
      }
  return dev;
}

struct InvarianceCertificate {
  double max_delta = 0.0;       // max over mu,nu and nodes of |Delta_{mu nu}|
  double bracket_identity = 0.0;
  double curl_relation = 0.0;   // max |d_rho Q^rho_{mu nu} + i G_{mu nu}|
};

// Delta_{mu nu} = psi-bar [ i(beta_nu d_mu - beta_mu d_nu)
//                         + (beta^rho S_{mu nu} - S_{mu nu} beta^rho) d_rho ] psi,
// plus the divergence/curl relation d_rho Q^rho_{mu nu} = -i G_{mu nu}.
inline InvarianceCertificate lorentz_invariance_certificate(const SpinorGridField& f,
                                                            const SpinorGridField& dt,
                                                            double transverse_tol = 0.25) {
  if (!f.grid.same_layout(dt.grid) || f.rep != dt.rep)
    throw GridMismatch("field and time derivative live on different grids");
  // Screen out genuinely longitudinal input. The stencil divergence of a
  // resolved transverse wave is O((kh)^2) relative to its gradient scale, so
  // the comparison is against the largest sampled derivative, not zero.
  {
    double de, dh;
    divergence_norms(f, de, dh);
    double grad_scale = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
      SpinorGridField d = spatial_derivative(f, ax);
      for (const auto& v : d.values) grad_scale = std::max(grad_scale, max_abs(v));
    }
    if (grad_scale > 0.0 && (de > transverse_tol * grad_scale || dh > transverse_tol * grad_scale))
      throw NonTransverseInput(de, dh);
  }

  const MatrixSet& ms = build_matrices(f.rep);
  const auto S = spin_generators_lower(f.rep);
  std::array<SpinorGridField, 4> d;
  d[0] = dt;
  for (int ax = 0; ax < 3; ++ax) d[ax + 1] = spatial_derivative(f, ax);

  InvarianceCertificate cert;
  cert.bracket_identity = invariance_bracket_identity(f.rep);

  std::array<std::array<Mat6, 4>, 16> bracket;  // [(mu,nu)][rho]
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int rho = 0; rho < 4; ++rho)
        bracket[4 * mu + nu][rho] =
            ms.beta_upper(rho) * S[mu][nu] - S[mu][nu] * ms.beta_upper(rho);

  const int N = f.grid.size();
  for (int n = 0; n < N; ++n) {
    const CVec6& psi = f.values[n];
    const CVec6 bpsi = ms.beta0 * psi;  // psi-bar as a row via adjoint below
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu) {
        CVec6 term = I * (ms.beta_lower(nu) * d[mu].values[n] -
                          ms.beta_lower(mu) * d[nu].values[n]);
        for (int rho = 0; rho < 4; ++rho)
          term += bracket[4 * mu + nu][rho] * d[rho].values[n];
        cert.max_delta = std::max(cert.max_delta, std::abs((psi.adjoint() * ms.beta0 * term)(0, 0)));
      }
    (void)bpsi;
  }

  // Curl relation. Q^rho_{mu nu} and psi-bar beta_mu psi are scalar grids;
  // time derivative via the product rule with the analytic dt field, spatial
  // derivatives via the same central stencils.
  auto scalar_grid = [&](const Mat6& op) {
    std::vector<Complex> v(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n)
      v[static_cast<std::size_t>(n)] =
          (f.values[n].adjoint() * ms.beta0 * op * f.values[n])(0, 0);
    return v;
  };
  auto scalar_dt = [&](const Mat6& op) {
    std::vector<Complex> v(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n)
      v[static_cast<std::size_t>(n)] =
          (dt.values[n].adjoint() * ms.beta0 * op * f.values[n])(0, 0) +
          (f.values[n].adjoint() * ms.beta0 * op * dt.values[n])(0, 0);
    return v;
  };
  auto scalar_spatial = [&](const std::vector<Complex>& v, int axis) {
    // Reuse the spinor stencil by packing the scalar into component 0.
    SpinorGridField tmp = make_field(f.grid, f.rep, f.time);
    for (int n = 0; n < N; ++n) tmp.values[n](0) = v[static_cast<std::size_t>(n)];
    SpinorGridField dv = spatial_derivative(tmp, axis);
    std::vector<Complex> out(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n) out[static_cast<std::size_t>(n)] = dv.values[n](0);
    return out;
  };

  std::array<std::vector<Complex>, 4> jmu, djmu_dt;  // psi-bar beta_mu psi (lower index)
  for (int mu = 0; mu < 4; ++mu) {
    jmu[mu] = scalar_grid(ms.beta_lower(mu));
    djmu_dt[mu] = scalar_dt(ms.beta_lower(mu));
  }
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu + 1; nu < 4; ++nu) {
      std::array<std::vector<Complex>, 4> dQ;  // d_rho Q^rho
      for (int rho = 0; rho < 4; ++rho) {
        const Mat6& op = bracket[4 * mu + nu][rho];
        if (rho == 0)
          dQ[rho] = scalar_dt(op);
        else
          dQ[rho] = scalar_spatial(scalar_grid(op), rho - 1);
      }
      std::vector<Complex> G(static_cast<std::size_t>(N));
      std::array<std::vector<Complex>, 2> grads;
      grads[0] = mu == 0 ? djmu_dt[nu] : scalar_spatial(jmu[nu], mu - 1);
      grads[1] = nu == 0 ? djmu_dt[mu] : scalar_spatial(jmu[mu], nu - 1);
      for (int n = 0; n < N; ++n) {
        Complex div = 0.0;
        for (int rho = 0; rho < 4; ++rho) div += dQ[rho][static_cast<std::size_t>(n)];
        const Complex g = grads[0][static_cast<std::size_t>(n)] -
                          grads[1][static_cast<std::size_t>(n)];
        cert.curl_relation = std::max(cert.curl_relation, std::abs(div + I * g));
      }
    }
  return cert;
}

}  // namespace photospin

#endif
