#ifndef PHOTOSPIN_CORE_HPP
#define PHOTOSPIN_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace photospin {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Mat6 = Eigen::Matrix<Complex, 6, 6>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Vec4 = Eigen::Vector4d;
using CVec4 = Eigen::Vector4cd;
using CVec6 = Eigen::Matrix<Complex, 6, 1>;

inline constexpr Complex I{0.0, 1.0};

// Metric convention eta = diag(-1,1,1,1) throughout.
inline double minkowski_eta(int mu, int nu) {
  if (mu != nu) return 0.0;
  return mu == 0 ? -1.0 : 1.0;
}

enum class Representation { Chiral, Standard };

inline const char* to_string(Representation rep) {
  return rep == Representation::Chiral ? "chiral" : "standard";
}

struct ZeroWaveVector : std::domain_error {
  ZeroWaveVector() : std::domain_error("wave vector has zero magnitude") {}
};
struct GridMismatch : std::invalid_argument {
  explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};
struct BoundaryUnsupported : std::invalid_argument {
  explicit BoundaryUnsupported(const std::string& what) : std::invalid_argument(what) {}
};
struct IncommensurateMode : std::invalid_argument {
  explicit IncommensurateMode(const std::string& what) : std::invalid_argument(what) {}
};
struct AsymmetricGrid : std::invalid_argument {
  explicit AsymmetricGrid(const std::string& what) : std::invalid_argument(what) {}
};
struct NonTransverseInput : std::domain_error {
  double div_e_norm;
  double div_h_norm;
  NonTransverseInput(double de, double dh)
      : std::domain_error("input field is not transverse (div E = " +
                          std::to_string(de) + ", div H = " + std::to_string(dh) + ")"),
        div_e_norm(de), div_h_norm(dh) {}
};
struct NonPositiveMedium : std::domain_error {
  explicit NonPositiveMedium(const std::string& what) : std::domain_error(what) {}
};
struct SVEAViolated : std::domain_error {
  explicit SVEAViolated(const std::string& what) : std::domain_error(what) {}
};
struct DegenerateMass : std::domain_error {
  explicit DegenerateMass(const std::string& what) : std::domain_error(what) {}
};
struct DomainViolation : std::domain_error {
  explicit DomainViolation(const std::string& what) : std::domain_error(what) {}
};
struct InvalidAngularMomentum : std::domain_error {
  explicit InvalidAngularMomentum(const std::string& what) : std::domain_error(what) {}
};
struct RootNotBracketed : std::runtime_error {
  explicit RootNotBracketed(const std::string& what) : std::runtime_error(what) {}
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

// Bilinear cross product (Eigen's cross() conjugates complex operands).
inline CVec3 cross3(const CVec3& a, const CVec3& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
          a(0) * b(1) - a(1) * b(0)};
}

// Deterministic RNG used by all randomized identity suites.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  Vec3 vec3(double lo = -1.0, double hi = 1.0) {
    return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
  }
  CVec3 cvec3(double lo = -1.0, double hi = 1.0) {
    return {Complex(uniform(lo, hi), uniform(lo, hi)),
            Complex(uniform(lo, hi), uniform(lo, hi)),
            Complex(uniform(lo, hi), uniform(lo, hi))};
  }
  CVec4 cvec4(double lo = -1.0, double hi = 1.0) {
    CVec4 v;
    for (int i = 0; i < 4; ++i) v(i) = Complex(uniform(lo, hi), uniform(lo, hi));
    return v;
  }
  CVec6 cvec6(double lo = -1.0, double hi = 1.0) {
    CVec6 v;
    for (int i = 0; i < 6; ++i) v(i) = Complex(uniform(lo, hi), uniform(lo, hi));
    return v;
  }
  // Nonzero wave vector bounded away from the k1=k2=0 degenerate axis.
  Vec3 nondegenerate_k(double lo = 0.2, double hi = 3.0) {
    for (;;) {
      Vec3 k = vec3(-hi, hi);
      double kperp2 = k(0) * k(0) + k(1) * k(1);
      if (k.norm() > lo && kperp2 > lo * lo * 0.01) return k;
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace photospin

#endif
