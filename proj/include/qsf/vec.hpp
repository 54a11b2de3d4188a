#pragma once

#include <array>
#include <cmath>

#include "qsf/dual.hpp"

namespace qsf {

/// Cartesian 3-vector over an arbitrary scalar type (double or dual).
template <class T>
struct Vec3T {
  T x{}, y{}, z{};
};

using Vec3 = Vec3T<double>;
using DVec3 = Vec3T<dual1>;

template <class T>
Vec3T<T> operator+(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
template <class T>
Vec3T<T> operator-(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
template <class T>
Vec3T<T> operator-(const Vec3T<T>& a) {
  return {-a.x, -a.y, -a.z};
}
template <class T, class S>
Vec3T<T> operator*(const S& s, const Vec3T<T>& v) {
  return {s * v.x, s * v.y, s * v.z};
}
template <class T, class S>
Vec3T<T> operator*(const Vec3T<T>& v, const S& s) {
  return {v.x * s, v.y * s, v.z * s};
}
template <class T, class S>
Vec3T<T> operator/(const Vec3T<T>& v, const S& s) {
  return {v.x / s, v.y / s, v.z / s};
}

template <class T>
T dot(const Vec3T<T>& a, const Vec3T<T>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
template <class T>
Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}
template <class T>
T norm2(const Vec3T<T>& v) {
  return dot(v, v);
}
template <class T>
T norm(const Vec3T<T>& v) {
  using std::sqrt;
  return sqrt(norm2(v));
}

template <class T>
Vec3T<T> unit_z() {
  return {T(0.0), T(0.0), T(1.0)};
}

inline Vec3 values_of(const Vec3& p) { return p; }
template <class T>
Vec3T<T> values_of(const Vec3T<Dual3<T>>& p) {
  return {p.x.v, p.y.v, p.z.v};
}

/// Seeds a point for first-derivative propagation.
inline Vec3T<dual1> seed1(const Vec3& p) {
  return {dual1(p.x, {1.0, 0.0, 0.0}), dual1(p.y, {0.0, 1.0, 0.0}),
          dual1(p.z, {0.0, 0.0, 1.0})};
}

/// Seeds a point for second-derivative propagation.
inline Vec3T<dual2> seed2(const Vec3& p) {
  const dual1 one(1.0);
  Vec3T<dual2> q;
  q.x = dual2(dual1(p.x, {1.0, 0.0, 0.0}), {one, dual1(0.0), dual1(0.0)});
  q.y = dual2(dual1(p.y, {0.0, 1.0, 0.0}), {dual1(0.0), one, dual1(0.0)});
  q.z = dual2(dual1(p.z, {0.0, 0.0, 1.0}), {dual1(0.0), dual1(0.0), one});
  return q;
}

/// Dense 3x3 matrix, row-major.
template <class T>
struct Mat3T {
  std::array<T, 9> m{};

  T& operator()(int i, int j) { return m[3 * i + j]; }
  const T& operator()(int i, int j) const { return m[3 * i + j]; }

  static Mat3T identity() {
    Mat3T r;
    r(0, 0) = r(1, 1) = r(2, 2) = T(1.0);
    return r;
  }
};

using Mat3 = Mat3T<double>;

template <class T>
Vec3T<T> matvec(const Mat3T<T>& a, const Vec3T<T>& v) {
  return {a(0, 0) * v.x + a(0, 1) * v.y + a(0, 2) * v.z,
          a(1, 0) * v.x + a(1, 1) * v.y + a(1, 2) * v.z,
          a(2, 0) * v.x + a(2, 1) * v.y + a(2, 2) * v.z};
}

template <class T>
Mat3T<T> outer(const Vec3T<T>& a, const Vec3T<T>& b) {
  Mat3T<T> r;
  const T ax[3] = {a.x, a.y, a.z};
  const T bx[3] = {b.x, b.y, b.z};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = ax[i] * bx[j];
  return r;
}

template <class T>
T trace(const Mat3T<T>& a) {
  return a(0, 0) + a(1, 1) + a(2, 2);
}

inline Vec3 row(const Mat3& a, int i) { return {a(i, 0), a(i, 1), a(i, 2)}; }
inline Vec3 col(const Mat3& a, int j) { return {a(0, j), a(1, j), a(2, j)}; }

}  // namespace qsf
