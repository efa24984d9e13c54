#pragma once

// Second-order truncated Taylor arithmetic along one curve parameter.
//
// A Jet2<T> carries f(0), f'(0) and f''(0). Arithmetic is exact for the
// truncated series, so composing polynomial or rational operations gives the
// exact first and second derivatives up to rounding. Nesting (Jet2<Jet2<T>>)
// differentiates along two independent parameters; the engine uses that to
// get coordinate fields of a chart as jets along a second direction.

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <utility>
#include <vector>

namespace sasred {

template <class T>
struct Jet2 {
  T value{};
  T d1{};
  T d2{};

  constexpr Jet2() = default;
  constexpr Jet2(double c) : value(c), d1(0.0), d2(0.0) {}  // NOLINT: implicit lift of constants
  constexpr Jet2(T v, T a, T b) : value(std::move(v)), d1(std::move(a)), d2(std::move(b)) {}
  template <class U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
  explicit Jet2(const T& c) : value(c), d1(0.0), d2(0.0) {}

  // A curve parameter: t itself, or c0 + c1 t.
  static Jet2 variable(T c0, T c1) { return Jet2(std::move(c0), std::move(c1), T(0.0)); }

  Jet2& operator+=(const Jet2& o) { value += o.value; d1 += o.d1; d2 += o.d2; return *this; }
  Jet2& operator-=(const Jet2& o) { value -= o.value; d1 -= o.d1; d2 -= o.d2; return *this; }
  Jet2& operator*=(const Jet2& o) { *this = *this * o; return *this; }
  Jet2& operator/=(const Jet2& o) { *this = *this / o; return *this; }

  friend Jet2 operator-(const Jet2& a) { return Jet2(-a.value, -a.d1, -a.d2); }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }

  // (fg)' = f'g + fg';  (fg)'' = f''g + 2f'g' + fg''
  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    return Jet2(a.value * b.value, a.d1 * b.value + a.value * b.d1,
                a.d2 * b.value + 2.0 * (a.d1 * b.d1) + a.value * b.d2);
  }
  friend Jet2 operator*(const Jet2& a, double c) { return Jet2(a.value * c, a.d1 * c, a.d2 * c); }
  friend Jet2 operator*(double c, const Jet2& a) { return a * c; }
  friend Jet2 operator+(const Jet2& a, double c) { return Jet2(a.value + c, a.d1, a.d2); }
  friend Jet2 operator+(double c, const Jet2& a) { return a + c; }
  friend Jet2 operator-(const Jet2& a, double c) { return Jet2(a.value - c, a.d1, a.d2); }
  friend Jet2 operator-(double c, const Jet2& a) { return Jet2(c - a.value, -a.d1, -a.d2); }

  friend Jet2 inverse(const Jet2& g) {
    T v = 1.0 / g.value;
    T v2 = v * v;
    // (1/g)' = -g'/g^2 ; (1/g)'' = 2g'^2/g^3 - g''/g^2
    return Jet2(v, -(g.d1 * v2), 2.0 * (g.d1 * g.d1) * (v2 * v) - g.d2 * v2);
  }
  friend Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inverse(b); }
  friend Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }
  friend Jet2 operator/(double c, const Jet2& b) { return inverse(b) * c; }

  friend Jet2 sqrt(const Jet2& g) {
    using std::sqrt;
    T f = sqrt(g.value);
    T f1 = g.d1 / (2.0 * f);
    return Jet2(f, f1, (g.d2 - 2.0 * (f1 * f1)) / (2.0 * f));
  }
  friend Jet2 sin(const Jet2& g) {
    using std::cos;
    using std::sin;
    T s = sin(g.value), c = cos(g.value);
    return Jet2(s, c * g.d1, c * g.d2 - s * (g.d1 * g.d1));
  }
  friend Jet2 cos(const Jet2& g) {
    using std::cos;
    using std::sin;
    T s = sin(g.value), c = cos(g.value);
    return Jet2(c, -(s * g.d1), -(s * g.d2) - c * (g.d1 * g.d1));
  }
};

using Jet2d = Jet2<double>;

template <class T>
struct is_jet : std::false_type {};
template <class T>
struct is_jet<Jet2<T>> : std::true_type {};

// The innermost double of a (possibly nested) jet.
inline double scalar_value(double x) { return x; }
template <class T>
double scalar_value(const Jet2<T>& x) {
  return scalar_value(x.value);
}

// Largest magnitude over every Taylor coefficient, at every nesting level.
inline double max_abs_part(double x) { return std::abs(x); }
template <class T>
double max_abs_part(const Jet2<T>& x) {
  double a = max_abs_part(x.value), b = max_abs_part(x.d1), c = max_abs_part(x.d2);
  return std::max(a, std::max(b, c));
}

template <class S>
using JVec = std::vector<S>;

}  // namespace sasred
