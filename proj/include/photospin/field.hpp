#ifndef PHOTOSPIN_FIELD_HPP
#define PHOTOSPIN_FIELD_HPP

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>
#include <vector>

#include "photospin/grid.hpp"
#include "photospin/polarization.hpp"

namespace photospin {

// One lattice mode: wave vector, linear-basis index i in {1,2}, amplitude.
struct ModeEntry {
  Vec3 k;
  int i = 1;
  Complex b{0.0, 0.0};
};

struct ModeCoefficients {
  std::vector<ModeEntry> entries;

  // Circular amplitudes a_{+1}, a_{-1} for one k, from the pair b(k,1), b(k,2).
  static std::pair<Complex, Complex> circular(Complex b1, Complex b2) {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (b1 - I * b2), s * (b1 + I * b2)};
  }
  static std::pair<Complex, Complex> linear_from_circular(Complex ap, Complex am) {
    const double s = 1.0 / std::sqrt(2.0);
    return {s * (ap + am), I * s * (ap - am)};
  }
};

inline void require_commensurate(const Vec3& k, const Grid& grid) {
  const Vec3 L = grid.lengths();
  for (int d = 0; d < 3; ++d) {
    const double cycles = k(d) * L(d) / (2.0 * M_PI);
    if (std::abs(cycles - std::round(cycles)) > 1e-9)
      throw IncommensurateMode("mode k is not commensurate with the periodic box");
  }
}

// psi(x,t) = sum sqrt(omega/2) f(k,i) [ b e^{i(k.x - omega t)} + b* e^{-i(k.x - omega t)} ].
// time_derivative_order 0 gives the field, 1 its analytic d/dt. A refractive
// index n slows the phase frequency to omega/n (homogeneous-medium waves).
inline SpinorGridField synthesize_field(const ModeCoefficients& coeffs, Representation rep,
                                        const Grid& grid, double time,
                                        int time_derivative_order = 0,
                                        double refractive_index = 1.0) {
  SpinorGridField out = make_field(grid, rep, time);
  for (const ModeEntry& m : coeffs.entries) {
    if (m.b == Complex(0.0, 0.0)) continue;
    const WaveVector kv{m.k};
    const double w = kv.omega();
    if (w == 0.0) throw ZeroWaveVector();
    require_commensurate(m.k, grid);
    const double wt = w / refractive_index;
    const CVec6 mode = std::sqrt(w / 2.0) * mode_spinor(kv, m.i, rep);
    for (int i = 0; i < grid.dims[0]; ++i)
      for (int j = 0; j < grid.dims[1]; ++j)
        for (int k = 0; k < grid.dims[2]; ++k) {
          const double phase = m.k.dot(grid.point(i, j, k)) - wt * time;
          Complex fwd = m.b * std::exp(I * phase);
          Complex bwd = std::conj(m.b) * std::exp(-I * phase);
          if (time_derivative_order == 1) {
            fwd *= -I * wt;
            bwd *= I * wt;
          }
          out.at(i, j, k) += mode * (fwd + bwd);
        }
  }
  return out;
}

// Residual of i d_t psi + i alpha . grad psi over the grid (max over nodes of
// the per-node Euclidean norm, so unitary spinor-space maps leave it exact),
// second-order stencils.
inline double dirac_residual(const SpinorGridField& field, const SpinorGridField& dt_field) {
  if (!field.grid.same_layout(dt_field.grid) || field.rep != dt_field.rep)
    throw GridMismatch("field and time derivative live on different grids");
  field.grid.validate();
  const MatrixSet& ms = build_matrices(field.rep);
  std::array<SpinorGridField, 3> d = {spatial_derivative(field, 0),
                                      spatial_derivative(field, 1),
                                      spatial_derivative(field, 2)};
  double res = 0.0;
  for (int n = 0; n < field.grid.size(); ++n) {
    CVec6 r = I * dt_field.values[n];
    for (int ax = 0; ax < 3; ++ax) r += I * (ms.alpha[ax] * d[ax].values[n]);
    res = std::max(res, r.norm());
  }
  return res;
}

struct DispersionResult {
  // det(omega - alpha.k) coefficients, ascending powers of omega (degree 6).
  Eigen::Matrix<double, 7, 1> coeffs;
  // (omega^2, multiplicity in omega counting +/- branches)
  std::vector<std::pair<double, int>> omega_sq_roots;
  double closed_form_deviation = 0.0;
};

// Polynomial interpolation of det(omega I - alpha.k) on 7 sample points,
// compared with omega^2 (omega^2 - k^2)^2.
inline DispersionResult dispersion_roots(const WaveVector& kv,
                                         Representation rep = Representation::Standard) {
  const MatrixSet& ms = build_matrices(rep);
  Mat6 ak = Mat6::Zero();
  for (int l = 0; l < 3; ++l) ak += kv.k(l) * ms.alpha[l];
  const double scale = std::max(1.0, kv.k.norm());
  Eigen::Matrix<double, 7, 7> V;
  Eigen::Matrix<double, 7, 1> rhs;
  for (int s = 0; s < 7; ++s) {
    const double w = scale * (s - 3) * 0.71;
    double p = 1.0;
    for (int j = 0; j < 7; ++j) {
      V(s, j) = p;
      p *= w;
    }
    const Mat6 m = w * Mat6::Identity() - ak;
    rhs(s) = m.determinant().real();
  }
  DispersionResult out;
  out.coeffs = V.fullPivLu().solve(rhs);
  const double k2 = kv.k.squaredNorm();
  Eigen::Matrix<double, 7, 1> closed;
  closed << 0.0, 0.0, k2 * k2, 0.0, -2.0 * k2, 0.0, 1.0;
  const double norm = std::max(1.0, k2 * k2);
  out.closed_form_deviation = (out.coeffs - closed).cwiseAbs().maxCoeff() / norm;
  out.omega_sq_roots = {{0.0, 2}, {k2, 4}};
  return out;
}

struct Observables {
  double J0 = 0.0;        // energy
  Vec3 J = Vec3::Zero();  // momentum
  Vec3 Jang = Vec3::Zero();
  std::vector<Eigen::Matrix3d> Tij;  // stress tensor per node
};

// Box quadrature (rectangle rule on the periodic box) of the bilinear
// densities: psi^t psi, psi^t alpha psi, psi^t (x cross alpha) psi, and the
// pointwise stress tensor psi^t (2 alpha_i alpha_j - delta_ij) psi.
inline Observables observables(const SpinorGridField& field) {
  const MatrixSet& ms = build_matrices(field.rep);
  const Grid& g = field.grid;
  const double dV = g.spacing(0) * g.spacing(1) * g.spacing(2);
  Observables out;
  out.Tij.resize(static_cast<std::size_t>(g.size()));
  std::array<Mat6, 9> taa;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      taa[3 * a + b] = 2.0 * ms.alpha[a] * ms.alpha[b];
      if (a == b) taa[3 * a + b] -= Mat6::Identity();
    }
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const CVec6& psi = field.at(i, j, k);
        const Vec3 x = g.point(i, j, k);
        out.J0 += ((psi.adjoint() * psi)(0, 0)).real() * dV;
        Vec3 Jdens;
        for (int l = 0; l < 3; ++l)
          Jdens(l) = ((psi.adjoint() * ms.alpha[l] * psi)(0, 0)).real();
        out.J += Jdens * dV;
        out.Jang += x.cross(Jdens) * dV;
        Eigen::Matrix3d& T = out.Tij[g.index(i, j, k)];
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            T(a, b) = ((psi.adjoint() * taa[3 * a + b] * psi)(0, 0)).real();
      }
  return out;
}

// Coefficient-space energy sum omega |b|^2 V for Parseval comparisons.
inline double mode_energy(const ModeCoefficients& coeffs, const Grid& grid) {
  const Vec3 L = grid.lengths();
  const double V = L(0) * L(1) * L(2);
  double e = 0.0;
  for (const ModeEntry& m : coeffs.entries) e += m.k.norm() * std::norm(m.b) * V;
  return e;
}

// L^t beta0 L = beta0 for the finite transformations, i.e. psi-bar psi is a
// Lorentz scalar.
inline double scalar_invariance_check(Representation rep, const LorentzParams& p) {
  const MatrixSet& ms = build_matrices(rep);
  const Mat6 L = lorentz_rep(rep, p);
  return max_abs(Mat6(L.adjoint() * ms.beta0 * L - ms.beta0));
}

}  // namespace photospin

#endif
