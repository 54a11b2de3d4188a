#pragma once

#include <array>
#include <cmath>
#include <type_traits>

namespace qsf {

/// Forward-mode number carrying a value together with its derivatives along
/// the three Cartesian directions. Nesting one level (Dual3<Dual3<double>>)
/// yields exact Hessians of composed expressions.
template <class T>
struct Dual3 {
  T v{};
  std::array<T, 3> g{};

  Dual3() = default;
  Dual3(const T& value) : v(value) {}
  template <class U>
    requires(!std::is_same_v<U, T> && std::is_convertible_v<U, T>)
  Dual3(U value) : v(static_cast<T>(value)) {}
  Dual3(const T& value, const std::array<T, 3>& grad) : v(value), g(grad) {}
};

using dual1 = Dual3<double>;
using dual2 = Dual3<dual1>;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual3<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual3<T>& x) {
  return value_of(x.v);
}

// --- arithmetic -----------------------------------------------------------

template <class T>
Dual3<T> operator+(const Dual3<T>& a, const Dual3<T>& b) {
  return {a.v + b.v, {a.g[0] + b.g[0], a.g[1] + b.g[1], a.g[2] + b.g[2]}};
}
template <class T>
Dual3<T> operator-(const Dual3<T>& a, const Dual3<T>& b) {
  return {a.v - b.v, {a.g[0] - b.g[0], a.g[1] - b.g[1], a.g[2] - b.g[2]}};
}
template <class T>
Dual3<T> operator-(const Dual3<T>& a) {
  return {-a.v, {-a.g[0], -a.g[1], -a.g[2]}};
}
template <class T>
Dual3<T> operator*(const Dual3<T>& a, const Dual3<T>& b) {
  return {a.v * b.v,
          {a.g[0] * b.v + a.v * b.g[0], a.g[1] * b.v + a.v * b.g[1],
           a.g[2] * b.v + a.v * b.g[2]}};
}
template <class T>
Dual3<T> operator/(const Dual3<T>& a, const Dual3<T>& b) {
  const T inv = T(1.0) / b.v;
  const T q = a.v * inv;
  return {q,
          {(a.g[0] - q * b.g[0]) * inv, (a.g[1] - q * b.g[1]) * inv,
           (a.g[2] - q * b.g[2]) * inv}};
}

template <class T>
Dual3<T> operator+(const Dual3<T>& a, double b) {
  return {a.v + b, a.g};
}
template <class T>
Dual3<T> operator+(double a, const Dual3<T>& b) {
  return {b.v + a, b.g};
}
template <class T>
Dual3<T> operator-(const Dual3<T>& a, double b) {
  return {a.v - b, a.g};
}
template <class T>
Dual3<T> operator-(double a, const Dual3<T>& b) {
  return {a - b.v, {-b.g[0], -b.g[1], -b.g[2]}};
}
template <class T>
Dual3<T> operator*(const Dual3<T>& a, double b) {
  return {a.v * b, {a.g[0] * b, a.g[1] * b, a.g[2] * b}};
}
template <class T>
Dual3<T> operator*(double a, const Dual3<T>& b) {
  return b * a;
}
template <class T>
Dual3<T> operator/(const Dual3<T>& a, double b) {
  return a * (1.0 / b);
}
template <class T>
Dual3<T> operator/(double a, const Dual3<T>& b) {
  return Dual3<T>(a) / b;
}

// --- elementary functions (chain rule) --------------------------------------

template <class T>
Dual3<T> chain(const Dual3<T>& x, const T& fv, const T& dfv) {
  return {fv, {dfv * x.g[0], dfv * x.g[1], dfv * x.g[2]}};
}

template <class T>
Dual3<T> sqrt(const Dual3<T>& x) {
  using std::sqrt;
  const T r = sqrt(x.v);
  return chain(x, r, T(0.5) / r);
}
template <class T>
Dual3<T> exp(const Dual3<T>& x) {
  using std::exp;
  const T e = exp(x.v);
  return chain(x, e, e);
}
template <class T>
Dual3<T> log(const Dual3<T>& x) {
  using std::log;
  return chain(x, log(x.v), T(1.0) / x.v);
}
template <class T>
Dual3<T> sin(const Dual3<T>& x) {
  using std::cos;
  using std::sin;
  return chain(x, sin(x.v), cos(x.v));
}
template <class T>
Dual3<T> cos(const Dual3<T>& x) {
  using std::cos;
  using std::sin;
  return chain(x, cos(x.v), -sin(x.v));
}
template <class T>
Dual3<T> sinh(const Dual3<T>& x) {
  using std::cosh;
  using std::sinh;
  return chain(x, sinh(x.v), cosh(x.v));
}
template <class T>
Dual3<T> cosh(const Dual3<T>& x) {
  using std::cosh;
  using std::sinh;
  return chain(x, cosh(x.v), sinh(x.v));
}
template <class T>
Dual3<T> tanh(const Dual3<T>& x) {
  using std::cosh;
  using std::tanh;
  const T c = cosh(x.v);
  return chain(x, tanh(x.v), T(1.0) / (c * c));
}
template <class T>
Dual3<T> asinh(const Dual3<T>& x) {
  using std::asinh;
  using std::sqrt;
  return chain(x, asinh(x.v), T(1.0) / sqrt(T(1.0) + x.v * x.v));
}
template <class T>
Dual3<T> asin(const Dual3<T>& x) {
  using std::asin;
  using std::sqrt;
  return chain(x, asin(x.v), T(1.0) / sqrt(T(1.0) - x.v * x.v));
}
template <class T>
Dual3<T> atan2(const Dual3<T>& y, const Dual3<T>& x) {
  using std::atan2;
  const T denom = T(1.0) / (x.v * x.v + y.v * y.v);
  Dual3<T> r(atan2(y.v, x.v));
  for (int i = 0; i < 3; ++i)
    r.g[i] = (x.v * y.g[i] - y.v * x.g[i]) * denom;
  return r;
}
template <class T>
Dual3<T> pow(const Dual3<T>& x, double e) {
  using std::pow;
  return chain(x, pow(x.v, e), T(e) * pow(x.v, e - 1.0));
}
template <class T>
Dual3<T> abs(const Dual3<T>& x) {
  return value_of(x) < 0.0 ? -x : x;
}

template <class T>
T sq(const T& x) {
  return x * x;
}

/// d/dx f(x) at a (possibly dual) abscissa, by seeding slot 0.
template <class F, class T>
T deriv1(F&& f, const T& x) {
  Dual3<T> xd(x, {T(1.0), T(0.0), T(0.0)});
  return f(xd).g[0];
}

}  // namespace qsf
