#ifndef PHOTOSPIN_GRID_HPP
#define PHOTOSPIN_GRID_HPP

#include <array>
#include <vector>

#include "photospin/algebra.hpp"
#include "photospin/core.hpp"

namespace photospin {

// Uniform Cartesian box. Nodes at origin + (i,j,k) .* spacing.
struct Grid {
  Vec3 origin = Vec3::Zero();
  Vec3 spacing = Vec3::Ones();
  std::array<int, 3> dims = {5, 5, 5};
  bool periodic = true;

  int size() const { return dims[0] * dims[1] * dims[2]; }
  int index(int i, int j, int k) const { return (i * dims[1] + j) * dims[2] + k; }
  Vec3 point(int i, int j, int k) const {
    return origin + Vec3(i * spacing(0), j * spacing(1), k * spacing(2));
  }
  bool same_layout(const Grid& o) const {
    return dims == o.dims && periodic == o.periodic &&
           (origin - o.origin).norm() < 1e-14 && (spacing - o.spacing).norm() < 1e-14;
  }
  void validate() const {
    for (int d = 0; d < 3; ++d) {
      if (dims[d] < 5)
        throw BoundaryUnsupported("grid dims must be >= 5 per axis for the stencil");
      if (!(spacing(d) > 0.0)) throw GridMismatch("grid spacing must be positive");
    }
  }
  // Periodic box lengths.
  Vec3 lengths() const {
    return {dims[0] * spacing(0), dims[1] * spacing(1), dims[2] * spacing(2)};
  }
};

struct SpinorGridField {
  Grid grid;
  Representation rep = Representation::Standard;
  double time = 0.0;
  std::vector<CVec6> values;

  const CVec6& at(int i, int j, int k) const { return values[grid.index(i, j, k)]; }
  CVec6& at(int i, int j, int k) { return values[grid.index(i, j, k)]; }
};

inline SpinorGridField make_field(const Grid& grid, Representation rep, double time = 0.0) {
  grid.validate();
  SpinorGridField f;
  f.grid = grid;
  f.rep = rep;
  f.time = time;
  f.values.assign(static_cast<std::size_t>(grid.size()), CVec6::Zero());
  return f;
}

// psi_C = ((E+iH)/2, (E-iH)/2); psi_S = (E, iH)/sqrt(2).
inline CVec6 assemble_sample(const CVec3& E, const CVec3& H, Representation rep) {
  CVec6 psi;
  if (rep == Representation::Chiral)
    psi << 0.5 * (E + I * H), 0.5 * (E - I * H);
  else
    psi << E / std::sqrt(2.0), I * H / std::sqrt(2.0);
  return psi;
}

inline void extract_sample(const CVec6& psi, Representation rep, CVec3& E, CVec3& H) {
  if (rep == Representation::Chiral) {
    E = psi.head<3>() + psi.tail<3>();
    H = -I * (psi.head<3>() - psi.tail<3>());
  } else {
    E = std::sqrt(2.0) * psi.head<3>();
    H = -I * std::sqrt(2.0) * psi.tail<3>();
  }
}

inline SpinorGridField assemble_spinor(const std::vector<CVec3>& E,
                                       const std::vector<CVec3>& H, const Grid& grid,
                                       Representation rep, double time = 0.0) {
  if (static_cast<int>(E.size()) != grid.size() || E.size() != H.size())
    throw GridMismatch("E/H sample counts do not match the grid");
  SpinorGridField f = make_field(grid, rep, time);
  for (int n = 0; n < grid.size(); ++n) f.values[n] = assemble_sample(E[n], H[n], rep);
  return f;
}

inline SpinorGridField convert_representation(const SpinorGridField& f, Representation to) {
  if (f.rep == to) return f;
  SpinorGridField out = f;
  out.rep = to;
  const Mat6& U = basis_change();  // involutive, so one direction serves both
  for (auto& v : out.values) v = U * v;
  return out;
}

// Second-order spatial derivative along one axis: central interior stencil,
// periodic wrap or one-sided edge stencils.
inline SpinorGridField spatial_derivative(const SpinorGridField& f, int axis) {
  f.grid.validate();
  SpinorGridField out = make_field(f.grid, f.rep, f.time);
  const auto& d = f.grid.dims;
  const double h = f.grid.spacing(axis);
  auto shifted = [&](int i, int j, int k, int off) -> const CVec6& {
    int idx[3] = {i, j, k};
    idx[axis] += off;
    if (f.grid.periodic) idx[axis] = (idx[axis] + d[axis]) % d[axis];
    return f.at(idx[0], idx[1], idx[2]);
  };
  for (int i = 0; i < d[0]; ++i)
    for (int j = 0; j < d[1]; ++j)
      for (int k = 0; k < d[2]; ++k) {
        const int pos = axis == 0 ? i : axis == 1 ? j : k;
        CVec6& r = out.at(i, j, k);
        if (f.grid.periodic || (pos > 0 && pos < d[axis] - 1)) {
          r = (shifted(i, j, k, +1) - shifted(i, j, k, -1)) / (2.0 * h);
        } else if (pos == 0) {
          r = (-3.0 * shifted(i, j, k, 0) + 4.0 * shifted(i, j, k, 1) -
               shifted(i, j, k, 2)) /
              (2.0 * h);
        } else {
          r = (3.0 * shifted(i, j, k, 0) - 4.0 * shifted(i, j, k, -1) +
               shifted(i, j, k, -2)) /
              (2.0 * h);
        }
      }
  return out;
}

// Max-norm divergence of the E and H parts, for transversality screening.
inline void divergence_norms(const SpinorGridField& f, double& div_e, double& div_h) {
  std::array<SpinorGridField, 3> d = {spatial_derivative(f, 0), spatial_derivative(f, 1),
                                      spatial_derivative(f, 2)};
  div_e = 0.0;
  div_h = 0.0;
  for (int n = 0; n < f.grid.size(); ++n) {
    CVec3 de = CVec3::Zero(), dh = CVec3::Zero();
    Complex se = 0.0, sh = 0.0;
    for (int ax = 0; ax < 3; ++ax) {
      CVec3 E, H;
      extract_sample(d[ax].values[n], f.rep, E, H);
      se += E(ax);
      sh += H(ax);
    }
    div_e = std::max(div_e, std::abs(se));
    div_h = std::max(div_h, std::abs(sh));
  }
}

}  // namespace photospin

#endif
