#pragma once

#include <cmath>

#include "qsf/charts.hpp"
#include "qsf/fields.hpp"

namespace qsf {

namespace detail {

template <class T>
T flux_expr(const T& mu, double mu0, const T& z_minus_h) {
  return 0.5 * (sq(mu - mu0) + sq(z_minus_h));
}

}  // namespace detail

/// A toroidal flux function Psi = 1/2 [(mu - mu0)^2 + (z - h)^2] together
/// with the level value whose level set bounds the domain. The radial
/// coordinate mu is r (axisymmetric / displaced), the elliptic chart distance
/// (elliptic), or a caller-supplied single-valued rule (general).
struct TorusSpec {
  enum class Kind { axisymmetric, elliptic, displaced, general };

  Kind kind = Kind::axisymmetric;
  double major = 1.0;  // r0 or mu0
  double level = 0.1;
  double chart_a = 2.0;  // elliptic kind only
  ScalarField mu;        // general kind only
  ScalarField h;         // optional displacement; !valid() means h = 0

  static TorusSpec axisymmetric(double r0, double level) {
    TorusSpec s;
    s.kind = Kind::axisymmetric;
    s.major = r0;
    s.level = level;
    check(s);
    return s;
  }

  static TorusSpec elliptic(double mu0, double level,
                            const EllipticChart& chart) {
    TorusSpec s;
    s.kind = Kind::elliptic;
    s.major = mu0;
    s.level = level;
    s.chart_a = chart.a;
    check(s);
    return s;
  }

  static TorusSpec displaced(double r0, double level, ScalarField h) {
    TorusSpec s;
    s.kind = Kind::displaced;
    s.major = r0;
    s.level = level;
    s.h = std::move(h);
    check(s);
    return s;
  }

  static TorusSpec general(ScalarField mu, double mu0, double level,
                           ScalarField h = {}) {
    TorusSpec s;
    s.kind = Kind::general;
    s.mu = std::move(mu);
    s.major = mu0;
    s.level = level;
    s.h = std::move(h);
    check(s);
    return s;
  }

 private:
  static void check(const TorusSpec& s) {
    if (!(s.major > 0.0)) throw Error("TorusSpec: major radius must be > 0");
    if (!(s.level > 0.0)) throw Error("TorusSpec: level must be > 0");
  }
};

/// Psi as a scalar field; exact gradients (and Hessians, when the
/// ingredients carry them) come from dual evaluation.
inline ScalarField flux_field(const TorusSpec& spec) {
  switch (spec.kind) {
    case TorusSpec::Kind::axisymmetric:
      return ScalarField::from_rule([r0 = spec.major](const auto& p) {
        return detail::flux_expr(cyl_radius(p), r0, p.z);
      });
    case TorusSpec::Kind::elliptic:
      return ScalarField::from_rule(
          [mu0 = spec.major, chart = EllipticChart(spec.chart_a)](
              const auto& p) {
            return detail::flux_expr(chart.mu(p), mu0, p.z);
          });
    case TorusSpec::Kind::displaced: {
      const double r0 = spec.major;
      const ScalarField h = spec.h;
      ScalarField::F0 f0 = [r0, h](const Vec3& p) {
        const double hv = h.valid() ? h.value(p) : 0.0;
        return detail::flux_expr(cyl_radius(p), r0, p.z - hv);
      };
      ScalarField::F1 f1;
      ScalarField::F2 f2;
      if (!h.valid() || h.has_exact())
        f1 = [r0, h](const Vec3& p) {
          const auto q = seed1(p);
          const dual1 hv = h.valid() ? h.jet1(p) : dual1(0.0);
          return detail::flux_expr(cyl_radius(q), r0, q.z - hv);
        };
      if (!h.valid() || h.has_hessian())
        f2 = [r0, h](const Vec3& p) {
          const auto q = seed2(p);
          const dual2 hv = h.valid() ? h.jet2(p) : dual2(0.0);
          return detail::flux_expr(cyl_radius(q), r0, q.z - hv);
        };
      return ScalarField::from_parts(std::move(f0), std::move(f1),
                                     std::move(f2));
    }
    case TorusSpec::Kind::general: {
      const double mu0 = spec.major;
      const ScalarField mu = spec.mu;
      const ScalarField h = spec.h;
      ScalarField::F0 f0 = [mu0, mu, h](const Vec3& p) {
        const double hv = h.valid() ? h.value(p) : 0.0;
        return detail::flux_expr(mu.value(p), mu0, p.z - hv);
      };
      ScalarField::F1 f1;
      ScalarField::F2 f2;
      if (mu.has_exact() && (!h.valid() || h.has_exact()))
        f1 = [mu0, mu, h](const Vec3& p) {
          const auto q = seed1(p);
          const dual1 hv = h.valid() ? h.jet1(p) : dual1(0.0);
          return detail::flux_expr(mu.jet1(p), mu0, q.z - hv);
        };
      if (mu.has_hessian() && (!h.valid() || h.has_hessian()))
        f2 = [mu0, mu, h](const Vec3& p) {
          const auto q = seed2(p);
          const dual2 hv = h.valid() ? h.jet2(p) : dual2(0.0);
          return detail::flux_expr(mu.jet2(p), mu0, q.z - hv);
        };
      return ScalarField::from_parts(std::move(f0), std::move(f1),
                                     std::move(f2));
    }
  }
  throw Error("flux_field: unknown torus kind");
}

inline double flux(const TorusSpec& spec, const Vec3& p) {
  return flux_field(spec).value(p);
}

}  // namespace qsf
