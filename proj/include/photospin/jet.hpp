#ifndef PHOTOSPIN_JET_HPP
#define PHOTOSPIN_JET_HPP

#include <array>
#include <cmath>

#include "photospin/core.hpp"

namespace photospin {

// Second-order forward-mode value: f, grad f, hess f with respect to the four
// coordinates (t, x1, x2, x3). Plain coordinate derivatives; any metric or
// medium scaling is applied by the consumer.
template <typename T>
struct Jet2 {
  T v{};
  std::array<T, 4> g{};
  std::array<std::array<T, 4>, 4> h{};

  Jet2() = default;
  Jet2(T value) : v(value) {}  // constant

  static Jet2 variable(T value, int index) {
    Jet2 j(value);
    j.g[static_cast<std::size_t>(index)] = T(1);
    return j;
  }

  Jet2 operator-() const {
    Jet2 r;
    r.v = -v;
    for (int a = 0; a < 4; ++a) {
      r.g[a] = -g[a];
      for (int b = 0; b < 4; ++b) r.h[a][b] = -h[a][b];
    }
    return r;
  }
  friend Jet2 operator+(const Jet2& x, const Jet2& y) {
    Jet2 r;
    r.v = x.v + y.v;
    for (int a = 0; a < 4; ++a) {
      r.g[a] = x.g[a] + y.g[a];
      for (int b = 0; b < 4; ++b) r.h[a][b] = x.h[a][b] + y.h[a][b];
    }
    return r;
  }
  friend Jet2 operator-(const Jet2& x, const Jet2& y) { return x + (-y); }
  friend Jet2 operator*(const Jet2& x, const Jet2& y) {
    Jet2 r;
    r.v = x.v * y.v;
    for (int a = 0; a < 4; ++a) r.g[a] = x.g[a] * y.v + x.v * y.g[a];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        r.h[a][b] = x.h[a][b] * y.v + x.g[a] * y.g[b] + x.g[b] * y.g[a] + x.v * y.h[a][b];
    return r;
  }
  friend Jet2 operator/(const Jet2& x, const Jet2& y) { return x * inverse(y); }
  friend Jet2 operator+(const Jet2& x, T c) { return x + Jet2(c); }
  friend Jet2 operator+(T c, const Jet2& x) { return x + Jet2(c); }
  friend Jet2 operator-(const Jet2& x, T c) { return x - Jet2(c); }
  friend Jet2 operator-(T c, const Jet2& x) { return Jet2(c) - x; }
  friend Jet2 operator*(const Jet2& x, T c) { return x * Jet2(c); }
  friend Jet2 operator*(T c, const Jet2& x) { return x * Jet2(c); }
  friend Jet2 operator/(const Jet2& x, T c) { return x * Jet2(T(1) / c); }
  friend Jet2 operator/(T c, const Jet2& x) { return Jet2(c) * inverse(x); }

  // Chain rule for a scalar function with f(v), f'(v), f''(v).
  static Jet2 compose(const Jet2& x, T f0, T f1, T f2) {
    Jet2 r;
    r.v = f0;
    for (int a = 0; a < 4; ++a) r.g[a] = f1 * x.g[a];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) r.h[a][b] = f1 * x.h[a][b] + f2 * x.g[a] * x.g[b];
    return r;
  }

  friend Jet2 inverse(const Jet2& x) {
    const T iv = T(1) / x.v;
    return compose(x, iv, -iv * iv, T(2) * iv * iv * iv);
  }
  friend Jet2 exp(const Jet2& x) {
    const T e = std::exp(x.v);
    return compose(x, e, e, e);
  }
  friend Jet2 log(const Jet2& x) {
    const T iv = T(1) / x.v;
    return compose(x, std::log(x.v), iv, -iv * iv);
  }
  friend Jet2 sqrt(const Jet2& x) {
    const T s = std::sqrt(x.v);
    return compose(x, s, T(0.5) / s, T(-0.25) / (s * x.v));
  }
  friend Jet2 sin(const Jet2& x) {
    return compose(x, std::sin(x.v), std::cos(x.v), -std::sin(x.v));
  }
  friend Jet2 cos(const Jet2& x) {
    return compose(x, std::cos(x.v), -std::sin(x.v), -std::cos(x.v));
  }
  friend Jet2 pow(const Jet2& x, double p) {
    const T f0 = std::pow(x.v, T(p));
    const T f1 = T(p) * std::pow(x.v, T(p - 1));
    const T f2 = T(p) * T(p - 1) * std::pow(x.v, T(p - 2));
    return compose(x, f0, f1, f2);
  }
};

using Jet2d = Jet2<double>;
using Jet2c = Jet2<Complex>;

// First-order remainder of applying one differential operator to a Jet2:
// keeps value and gradient, loses the hessian.
template <typename T>
struct Jet1 {
  T v{};
  std::array<T, 4> g{};

  Jet1() = default;
  Jet1(T value) : v(value) {}

  friend Jet1 operator+(const Jet1& x, const Jet1& y) {
    Jet1 r;
    r.v = x.v + y.v;
    for (int a = 0; a < 4; ++a) r.g[a] = x.g[a] + y.g[a];
    return r;
  }
  friend Jet1 operator-(const Jet1& x, const Jet1& y) {
    Jet1 r;
    r.v = x.v - y.v;
    for (int a = 0; a < 4; ++a) r.g[a] = x.g[a] - y.g[a];
    return r;
  }
  Jet1 operator-() const {
    Jet1 r;
    r.v = -v;
    for (int a = 0; a < 4; ++a) r.g[a] = -g[a];
    return r;
  }
  friend Jet1 operator*(const Jet1& x, const Jet1& y) {
    Jet1 r;
    r.v = x.v * y.v;
    for (int a = 0; a < 4; ++a) r.g[a] = x.g[a] * y.v + x.v * y.g[a];
    return r;
  }
  friend Jet1 operator*(T c, const Jet1& x) {
    Jet1 r;
    r.v = c * x.v;
    for (int a = 0; a < 4; ++a) r.g[a] = c * x.g[a];
    return r;
  }
};

using Jet1d = Jet1<double>;
using Jet1c = Jet1<Complex>;

template <typename T>
Jet1<T> truncate(const Jet2<T>& x) {
  Jet1<T> r;
  r.v = x.v;
  r.g = x.g;
  return r;
}

// Plain coordinate derivative d/dx_a of a Jet2, as a Jet1.
template <typename T>
Jet1<T> deriv(const Jet2<T>& x, int a) {
  Jet1<T> r;
  r.v = x.g[static_cast<std::size_t>(a)];
  for (int b = 0; b < 4; ++b) r.g[b] = x.h[static_cast<std::size_t>(a)][b];
  return r;
}

template <typename T>
Jet1<T> mixed_cast(const Jet1<double>& x) {
  Jet1<T> r;
  r.v = T(x.v);
  for (int a = 0; a < 4; ++a) r.g[a] = T(x.g[a]);
  return r;
}

// Analytic spinor samples: six components with full first/second coordinate
// derivatives (standard- or chiral-representation layout per consumer).
using SpinorJet = std::array<Jet2c, 6>;
using SpinorJet1 = std::array<Jet1c, 6>;

inline CVec6 values_of(const SpinorJet& p) {
  CVec6 v;
  for (int c = 0; c < 6; ++c) v(c) = p[static_cast<std::size_t>(c)].v;
  return v;
}
inline CVec6 values_of(const SpinorJet1& p) {
  CVec6 v;
  for (int c = 0; c < 6; ++c) v(c) = p[static_cast<std::size_t>(c)].v;
  return v;
}

}  // namespace photospin

#endif
