#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qsf/errors.hpp"
#include "qsf/vec.hpp"

namespace qsf {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Points with delta below this floor are treated as lying on the focal set,
// where delta appears in gradient denominators.
inline constexpr double focal_delta_floor = 1e-14;

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double a) {
  a = std::fmod(a, two_pi);
  return a < 0.0 ? a + two_pi : a;
}

/// Toroidal angle phi in [0, 2*pi); derivative-safe off the z axis, value
/// jumps across the y = 0, x > 0 half-plane.
template <class T>
T phi_angle(const Vec3T<T>& p) {
  using std::atan2;
  T t = atan2(p.y, p.x);
  if (value_of(t) < 0.0) t = t + two_pi;
  return t;
}

template <class T>
T cyl_radius(const Vec3T<T>& p) {
  using std::sqrt;
  return sqrt(p.x * p.x + p.y * p.y);
}

struct CylPoint {
  double r = 0.0;
  double phi = 0.0;
  double z = 0.0;
};

/// r = sqrt(x^2+y^2), phi = atan2(y,x) wrapped to [0,2*pi). On the polar axis
/// phi is defined as 0.
inline CylPoint cyl_from_cart(const Vec3& p) {
  CylPoint q;
  q.r = std::sqrt(p.x * p.x + p.y * p.y);
  q.phi = (q.r == 0.0) ? 0.0 : wrap_angle(std::atan2(p.y, p.x));
  q.z = p.z;
  return q;
}

template <class T>
Vec3T<T> cart_from_cyl(const T& r, const T& phi, const T& z) {
  using std::cos;
  using std::sin;
  return {r * cos(phi), r * sin(phi), z};
}

template <class T>
Vec3T<T> grad_r(const Vec3T<T>& p) {
  const T r = cyl_radius(p);
  return {p.x / r, p.y / r, T(0.0)};
}

template <class T>
Vec3T<T> grad_phi(const Vec3T<T>& p) {
  const T r2 = p.x * p.x + p.y * p.y;
  return {-p.y / r2, p.x / r2, T(0.0)};
}

// ---------------------------------------------------------------------------
// Elliptic cylindrical coordinates
//
//   x = a cosh(mu) cos(nu),  y = a sinh(mu) sin(nu),  z = z
//
// with foci at (+-a, 0, z). (mu, nu, z) form harmonic orthogonal coordinates:
// grad(mu) . grad(nu) = 0, |grad mu| = |grad nu| = 1/(a sqrt(delta)),
// delta = sin^2(nu) + sinh^2(mu).
// ---------------------------------------------------------------------------

struct EllipticPoint {
  double mu = 0.0;
  double nu = 0.0;
  double z = 0.0;
};

namespace detail {

// sinh^2(mu) as a Cartesian closed form; smooth off the closed focal segment
// {y = 0, |x| <= a}. Clamped at zero against rounding.
template <class T>
T ell_sinh2_mu(const Vec3T<T>& p, double a) {
  using std::sqrt;
  const double inv_a2 = 1.0 / (a * a);
  const T R = (p.x * p.x + p.y * p.y) * inv_a2;
  const T delta = sqrt(sq(1.0 - R) + 4.0 * inv_a2 * (p.y * p.y));
  T s2 = 0.5 * (R - 1.0 + delta);
  if (value_of(s2) < 0.0) s2 = s2 - value_of(s2);
  return s2;
}

}  // namespace detail

struct EllipticChart {
  double a = 2.0;  // focal half-distance

  explicit EllipticChart(double focal) : a(focal) {
    if (!(a > 0.0)) throw Error("EllipticChart: focal parameter must be > 0");
  }

  /// delta = sqrt((1 - (x^2+y^2)/a^2)^2 + 4 y^2/a^2) = sin^2(nu)+sinh^2(mu).
  template <class T>
  T delta(const Vec3T<T>& p) const {
    using std::sqrt;
    const double inv_a2 = 1.0 / (a * a);
    const T R = (p.x * p.x + p.y * p.y) * inv_a2;
    return sqrt(sq(1.0 - R) + 4.0 * inv_a2 * (p.y * p.y));
  }

  template <class T>
  T mu(const Vec3T<T>& p) const {
    using std::asinh;
    using std::sqrt;
    return asinh(sqrt(detail::ell_sinh2_mu(p, a)));
  }

  /// nu on [0, 2*pi), extending the first-quadrant inverse by the sign table
  /// pi - nu for x<0, y>=0; 2*pi - nu for x>=0, y<0; pi + nu for x,y < 0.
  /// Realized as atan2(sin nu, cos nu) = atan2(y cosh mu, x sinh mu), which
  /// selects the same branch from the signs of (x, y) without cancellation.
  /// The open focal segment (mu = 0) is excluded: nu branches there.
  double nu(const Vec3& p) const {
    check_off_focal_segment(p);
    const double s2 = detail::ell_sinh2_mu(p, a);
    const double s = std::sqrt(s2);
    const double c = std::sqrt(1.0 + s2);
    return wrap_angle(std::atan2(p.y * c, p.x * s));
  }

  /// Branch-stable nu with exact derivatives at any dual depth: the value is
  /// taken from the quadrant table, the derivatives from the closed-form
  /// gradient.
  template <class S>
  Dual3<S> nu(const Vec3T<Dual3<S>>& p) const {
    const Vec3T<S> pv = values_of(p);
    const S val(nu(pv));
    const Vec3T<S> gn = grad_nu(pv);
    Dual3<S> out(val);
    for (int i = 0; i < 3; ++i)
      out.g[i] = gn.x * p.x.g[i] + gn.y * p.y.g[i] + gn.z * p.z.g[i];
    return out;
  }

  template <class T>
  Vec3T<T> grad_mu(const Vec3T<T>& p) const {
    T P, Q, d;
    grad_parts(p, P, Q, d);
    const T f = 1.0 / (a * d);
    return {P * f, Q * f, T(0.0)};
  }

  template <class T>
  Vec3T<T> grad_nu(const Vec3T<T>& p) const {
    T P, Q, d;
    grad_parts(p, P, Q, d);
    const T f = 1.0 / (a * d);
    return {-Q * f, P * f, T(0.0)};
  }

  /// |grad mu|^2 = |grad nu|^2 as a function of the chart coordinates.
  template <class T>
  T w_sq(const T& mu_, const T& nu_) const {
    using std::sin;
    using std::sinh;
    return 1.0 / (a * a * (sq(sin(nu_)) + sq(sinh(mu_))));
  }

  Vec3 cart(double mu_, double nu_, double z_) const {
    return {a * std::cosh(mu_) * std::cos(nu_),
            a * std::sinh(mu_) * std::sin(nu_), z_};
  }

 private:
  void check_off_focal_segment(const Vec3& p) const {
    if (p.y == 0.0 && std::abs(p.x) < a)
      throw FocalSegmentError("point on the open focal segment: nu branches");
    if (value_of(delta(p)) < focal_delta_floor)
      throw FocalSegmentError("delta below exclusion floor (focus)");
  }

  // P = sinh(mu)cos(nu), Q = cosh(mu)sin(nu), d = delta = P^2 + Q^2.
  // Smooth Cartesian closed forms off the closed focal segment.
  template <class T>
  void grad_parts(const Vec3T<T>& p, T& P, T& Q, T& d) const {
    using std::sqrt;
    d = delta(p);
    if (value_of(d) < focal_delta_floor)
      throw FocalSegmentError("gradient requested at a focus (delta ~ 0)");
    const T s2 = detail::ell_sinh2_mu(p, a);
    if (value_of(s2) <= 1e-30)
      throw FocalSegmentError("gradient requested on the focal segment");
    const T s = sqrt(s2);
    const T c = sqrt(1.0 + s2);
    P = p.x * s / (a * c);
    Q = p.y * c / (a * s);
  }
};

/// delta at a Cartesian point; vanishes exactly at the foci.
template <class T>
T elliptic_delta(const Vec3T<T>& p, const EllipticChart& chart) {
  return chart.delta(p);
}

/// Inverse chart map. Throws FocalSegmentError on the open focal segment and
/// at the foci, where nu is ill-defined.
inline EllipticPoint elliptic_from_cart(const Vec3& p,
                                        const EllipticChart& chart) {
  EllipticPoint q;
  q.nu = chart.nu(p);  // performs the focal-segment check
  q.mu = chart.mu(p);
  q.z = p.z;
  return q;
}

template <class T>
Vec3T<T> cart_from_elliptic(const T& mu, const T& nu, const T& z,
                            const EllipticChart& chart) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  return {chart.a * cosh(mu) * cos(nu), chart.a * sinh(mu) * sin(nu), z};
}

inline Vec3 cart_from_elliptic(const EllipticPoint& q,
                               const EllipticChart& chart) {
  return cart_from_elliptic(q.mu, q.nu, q.z, chart);
}

template <class T>
Vec3T<T> grad_mu(const Vec3T<T>& p, const EllipticChart& chart) {
  return chart.grad_mu(p);
}

template <class T>
Vec3T<T> grad_nu(const Vec3T<T>& p, const EllipticChart& chart) {
  return chart.grad_nu(p);
}

// ---------------------------------------------------------------------------
// Cylindrical harmonic chart (log r, phi, z): the reference case of harmonic
// orthogonal coordinates, with |grad mu| = |grad nu| = 1/r.
// ---------------------------------------------------------------------------

struct LogCylChart {
  template <class T>
  T mu(const Vec3T<T>& p) const {
    using std::log;
    return log(cyl_radius(p));
  }

  template <class T>
  T nu(const Vec3T<T>& p) const {
    return phi_angle(p);
  }

  template <class T>
  Vec3T<T> grad_mu(const Vec3T<T>& p) const {
    const T r2 = p.x * p.x + p.y * p.y;
    return {p.x / r2, p.y / r2, T(0.0)};
  }

  template <class T>
  Vec3T<T> grad_nu(const Vec3T<T>& p) const {
    return grad_phi(p);
  }

  template <class T>
  T w_sq(const T& mu_, const T& /*nu_*/) const {
    using std::exp;
    return exp(-2.0 * mu_);
  }

  Vec3 cart(double mu_, double nu_, double z_) const {
    const double r = std::exp(mu_);
    return {r * std::cos(nu_), r * std::sin(nu_), z_};
  }
};

}  // namespace qsf
