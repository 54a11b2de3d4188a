#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "qsf/errors.hpp"
#include "qsf/vec.hpp"

namespace qsf {

/// Derivative path: exact forward-mode duals, or central finite differences.
/// The two are kept fully independent so they can cross-validate each other.
enum class Method { dual, fd };

struct DiffOptions {
  Method method = Method::dual;
  double fd_step = 1e-5;  // scaled by max(1, |p|)
};

inline double fd_step_at(const Vec3& p, double h) {
  return h * std::max(1.0, norm(p));
}

/// Scalar field descriptor: a closed-over evaluation rule with optional exact
/// first- and second-derivative rules carried as dual evaluations at the
/// point. All fields are Cartesian-valued at Cartesian points.
class ScalarField {
 public:
  using F0 = std::function<double(const Vec3&)>;
  using F1 = std::function<dual1(const Vec3&)>;
  using F2 = std::function<dual2(const Vec3&)>;

  ScalarField() = default;

  static ScalarField from_parts(F0 f0, F1 f1 = {}, F2 f2 = {}) {
    ScalarField s;
    s.f0_ = std::move(f0);
    s.f1_ = std::move(f1);
    s.f2_ = std::move(f2);
    return s;
  }

  /// Builds all derivative depths from one generic rule f(Vec3T<S>) -> S.
  template <class F>
  static ScalarField from_rule(F f) {
    return from_parts([f](const Vec3& p) { return f(p); },
                      [f](const Vec3& p) { return f(seed1(p)); },
                      [f](const Vec3& p) { return f(seed2(p)); });
  }

  /// Value rule only; the dual path throws MissingDerivativeRule.
  template <class F>
  static ScalarField value_only(F f) {
    return from_parts([f](const Vec3& p) { return f(p); });
  }

  /// Builds a field from a branch-stable value rule plus a generic analytic
  /// gradient rule; used for multivalued potentials (phi, nu, quadrature
  /// antiderivatives) whose raw value formulas are not derivative-safe.
  template <class VF, class GF>
  static ScalarField from_value_and_grad(VF val, GF grad) {
    return from_parts(
        [val](const Vec3& p) { return val(p); },
        [val, grad](const Vec3& p) {
          const Vec3 g = grad(p);
          return dual1(val(p), {g.x, g.y, g.z});
        },
        [val, grad](const Vec3& p) {
          const Vec3T<dual1> G = grad(seed1(p));
          dual2 out;
          out.v = dual1(val(p), {G.x.v, G.y.v, G.z.v});
          out.g = {G.x, G.y, G.z};
          return out;
        });
  }

  static ScalarField constant(double c) {
    return from_rule([c](const auto& p) {
      using T = std::decay_t<decltype(p.x)>;
      (void)p;
      return T(c);
    });
  }

  bool valid() const { return static_cast<bool>(f0_); }
  bool has_exact() const { return static_cast<bool>(f1_); }
  bool has_hessian() const { return static_cast<bool>(f2_); }

  double value(const Vec3& p) const { return f0_(p); }
  double operator()(const Vec3& p) const { return f0_(p); }

  dual1 jet1(const Vec3& p) const {
    if (!f1_) throw MissingDerivativeRule("scalar field has no exact rule");
    return f1_(p);
  }

  dual2 jet2(const Vec3& p) const {
    if (!f2_)
      throw MissingDerivativeRule("scalar field has no second-order rule");
    return f2_(p);
  }

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
  }
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
  }
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
  }
  friend ScalarField operator*(double c, const ScalarField& a) {
    return from_parts(
        [c, a](const Vec3& p) { return c * a.f0_(p); },
        a.f1_ ? F1([c, a](const Vec3& p) { return a.f1_(p) * c; }) : F1{},
        a.f2_ ? F2([c, a](const Vec3& p) { return a.f2_(p) * c; }) : F2{});
  }

 private:
  template <class Op>
  static ScalarField combine(const ScalarField& a, const ScalarField& b,
                             Op op) {
    ScalarField s;
    s.f0_ = [a, b, op](const Vec3& p) { return op(a.f0_(p), b.f0_(p)); };
    if (a.f1_ && b.f1_)
      s.f1_ = [a, b, op](const Vec3& p) { return op(a.f1_(p), b.f1_(p)); };
    if (a.f2_ && b.f2_)
      s.f2_ = [a, b, op](const Vec3& p) { return op(a.f2_(p), b.f2_(p)); };
    return s;
  }

  F0 f0_;
  F1 f1_;
  F2 f2_;
};

/// Vector field descriptor with an optional exact-Jacobian rule.
class VectorField {
 public:
  using V0 = std::function<Vec3(const Vec3&)>;
  using V1 = std::function<Vec3T<dual1>(const Vec3&)>;

  VectorField() = default;

  static VectorField from_parts(V0 v0, V1 v1 = {}) {
    VectorField v;
    v.v0_ = std::move(v0);
    v.v1_ = std::move(v1);
    return v;
  }

  template <class F>
  static VectorField from_rule(F f) {
    return from_parts([f](const Vec3& p) { return f(p); },
                      [f](const Vec3& p) { return f(seed1(p)); });
  }

  template <class F>
  static VectorField value_only(F f) {
    return from_parts([f](const Vec3& p) { return f(p); });
  }

  static VectorField constant(const Vec3& c) {
    return from_rule([c](const auto& p) {
      using T = std::decay_t<decltype(p.x)>;
      (void)p;
      return Vec3T<T>{T(c.x), T(c.y), T(c.z)};
    });
  }

  bool valid() const { return static_cast<bool>(v0_); }
  bool has_exact() const { return static_cast<bool>(v1_); }

  Vec3 value(const Vec3& p) const { return v0_(p); }
  Vec3 operator()(const Vec3& p) const { return v0_(p); }

  Vec3T<dual1> jet1(const Vec3& p) const {
    if (!v1_) throw MissingDerivativeRule("vector field has no exact rule");
    return v1_(p);
  }

  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    return from_parts(
        [a, b](const Vec3& p) { return a.v0_(p) + b.v0_(p); },
        (a.v1_ && b.v1_)
            ? V1([a, b](const Vec3& p) { return a.v1_(p) + b.v1_(p); })
            : V1{});
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) {
    return from_parts(
        [a, b](const Vec3& p) { return a.v0_(p) - b.v0_(p); },
        (a.v1_ && b.v1_)
            ? V1([a, b](const Vec3& p) { return a.v1_(p) - b.v1_(p); })
            : V1{});
  }
  friend VectorField operator*(double c, const VectorField& a) {
    return from_parts(
        [c, a](const Vec3& p) { return c * a.v0_(p); },
        a.v1_ ? V1([c, a](const Vec3& p) { return a.v1_(p) * dual1(c); })
              : V1{});
  }
  friend VectorField operator*(const ScalarField& s, const VectorField& a) {
    return from_parts(
        [s, a](const Vec3& p) { return s.value(p) * a.v0_(p); },
        (s.has_exact() && a.v1_)
            ? V1([s, a](const Vec3& p) { return s.jet1(p) * a.v1_(p); })
            : V1{});
  }

 private:
  V0 v0_;
  V1 v1_;
};

/// grad(f) as a vector field; the Jacobian rule needs f's Hessian depth.
inline VectorField grad_field(const ScalarField& f) {
  VectorField::V1 v1;
  if (f.has_hessian())
    v1 = [f](const Vec3& p) {
      const dual2 j = f.jet2(p);
      return Vec3T<dual1>{j.g[0], j.g[1], j.g[2]};
    };
  return VectorField::from_parts(
      [f](const Vec3& p) {
        const dual1 j = f.jet1(p);
        return Vec3{j.g[0], j.g[1], j.g[2]};
      },
      std::move(v1));
}

/// |V|^2 as a scalar field; carries one derivative depth less than V.
inline ScalarField magnitude_sq(const VectorField& v) {
  ScalarField::F1 f1;
  if (v.has_exact()) f1 = [v](const Vec3& p) { return norm2(v.jet1(p)); };
  return ScalarField::from_parts(
      [v](const Vec3& p) { return norm2(v.value(p)); }, std::move(f1));
}

// --- differential operators -------------------------------------------------

inline Vec3 grad(const ScalarField& f, const Vec3& p,
                 const DiffOptions& opt = {}) {
  if (opt.method == Method::dual) {
    const dual1 j = f.jet1(p);
    return {j.g[0], j.g[1], j.g[2]};
  }
  const double h = fd_step_at(p, opt.fd_step);
  return {(f.value({p.x + h, p.y, p.z}) - f.value({p.x - h, p.y, p.z})) /
              (2.0 * h),
          (f.value({p.x, p.y + h, p.z}) - f.value({p.x, p.y - h, p.z})) /
              (2.0 * h),
          (f.value({p.x, p.y, p.z + h}) - f.value({p.x, p.y, p.z - h})) /
              (2.0 * h)};
}

/// Jacobian J(i,j) = dV_i/dx_j.
inline Mat3 jacobian(const VectorField& v, const Vec3& p,
                     const DiffOptions& opt = {}) {
  Mat3 J;
  if (opt.method == Method::dual) {
    const auto j = v.jet1(p);
    const dual1 comps[3] = {j.x, j.y, j.z};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) J(i, k) = comps[i].g[k];
    return J;
  }
  const double h = fd_step_at(p, opt.fd_step);
  const Vec3 es[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
  for (int k = 0; k < 3; ++k) {
    const Vec3 vp = v.value(p + es[k]);
    const Vec3 vm = v.value(p - es[k]);
    J(0, k) = (vp.x - vm.x) / (2.0 * h);
    J(1, k) = (vp.y - vm.y) / (2.0 * h);
    J(2, k) = (vp.z - vm.z) / (2.0 * h);
  }
  return J;
}

inline double div(const VectorField& v, const Vec3& p,
                  const DiffOptions& opt = {}) {
  return trace(jacobian(v, p, opt));
}

inline Vec3 curl(const VectorField& v, const Vec3& p,
                 const DiffOptions& opt = {}) {
  const Mat3 J = jacobian(v, p, opt);
  return {J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1)};
}

/// Directional derivative V . grad(f).
inline double dir_deriv(const VectorField& v, const ScalarField& f,
                        const Vec3& p, const DiffOptions& opt = {}) {
  return dot(v.value(p), grad(f, p, opt));
}

/// (u . grad) B - (B . grad) u, the commutator measuring Lie transport of B
/// along u.
inline Vec3 lie_derivative_vec(const VectorField& u, const VectorField& B,
                               const Vec3& p, const DiffOptions& opt = {}) {
  const Mat3 Jb = jacobian(B, p, opt);
  const Mat3 Ju = jacobian(u, p, opt);
  return matvec(Jb, u.value(p)) - matvec(Ju, B.value(p));
}

/// scale * (grad(alpha) x grad(beta)); identically divergence-free whenever
/// scale depends only on (alpha, beta).
inline VectorField clebsch(const ScalarField& alpha, const ScalarField& beta,
                           const ScalarField& scale) {
  VectorField::V1 v1;
  if (alpha.has_hessian() && beta.has_hessian() && scale.has_exact())
    v1 = [alpha, beta, scale](const Vec3& p) {
      const dual2 a = alpha.jet2(p);
      const dual2 b = beta.jet2(p);
      const Vec3T<dual1> ga{a.g[0], a.g[1], a.g[2]};
      const Vec3T<dual1> gb{b.g[0], b.g[1], b.g[2]};
      return scale.jet1(p) * cross(ga, gb);
    };
  return VectorField::from_parts(
      [alpha, beta, scale](const Vec3& p) {
        const dual1 a = alpha.jet1(p);
        const dual1 b = beta.jet1(p);
        const Vec3 ga{a.g[0], a.g[1], a.g[2]};
        const Vec3 gb{b.g[0], b.g[1], b.g[2]};
        return scale.value(p) * cross(ga, gb);
      },
      std::move(v1));
}

}  // namespace qsf
