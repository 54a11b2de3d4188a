#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "qsf/charts.hpp"
#include "qsf/fields.hpp"
#include "qsf/quadrature.hpp"
#include "qsf/sampling.hpp"
#include "qsf/torus.hpp"

namespace qsf {

/// A constructed field bundle ready for residual verification: the magnetic
/// field, its quasisymmetry direction (when one exists), the Clebsch function
/// zeta with the target (dg/dzeta) grad(zeta), and the flux function.
struct QsSolution {
  std::string name;
  VectorField B;
  VectorField u;
  ScalarField zeta;
  VectorField bxu_target;  // (dg/dzeta) grad(zeta)
  ScalarField psi;
  ScalarField h;
  TorusSpec torus;
  bool has_torus = false;
  double k = 0.0;
  bool u_flux_tangent = false;  // bundle claims u . grad(psi) = 0
  bool self_qs = false;         // bundle claims B . grad(B^2) = 0
  bool phi_cut = false;         // components jump across phi = 0
  std::function<std::vector<Vec3>(const SampleOptions&)> sampler;

  std::vector<Vec3> sample(const SampleOptions& opt = {}) const {
    if (!sampler) throw Error("solution has no sampler");
    return sampler(opt);
  }
};

namespace detail {

inline auto zero_profile() {
  return [](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    (void)x;
    return T(0.0);
  };
}

inline auto sin_profile() {
  return [](const auto& x) {
    using std::sin;
    return sin(x);
  };
}

inline auto unit_profile() {
  return [](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    (void)x;
    return T(1.0);
  };
}

}  // namespace detail

/// B = f(r, z/r - phi) grad(r) x grad(z/r - phi): solenoidal, tangent to
/// cylinders r = const, with B.grad(B) = 0, and no continuous Euclidean
/// symmetry for generic f. The bundle sets u = B (the quasisymmetry is the
/// field direction itself) and zeta = const.
template <class F>
QsSolution helical_selfqs(F f, double r_lo = 0.6, double r_hi = 1.6,
                          double z_half = 0.8) {
  auto B_rule = [f](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    const T r = cyl_radius(p);
    const T w = p.z / r - phi_angle(p);
    const Vec3T<T> gr = grad_r(p);
    const Vec3T<T> gw =
        unit_z<T>() / r - (p.z / (r * r)) * gr - grad_phi(p);
    return f(r, w) * cross(gr, gw);
  };
  QsSolution sol;
  sol.name = "helical-selfqs";
  sol.B = VectorField::from_rule(B_rule);
  sol.u = sol.B;
  sol.zeta = ScalarField::constant(0.0);
  sol.bxu_target = VectorField::constant({0.0, 0.0, 0.0});
  sol.psi = ScalarField::from_rule(
      [](const auto& p) { return cyl_radius(p); });  // cylinder levels
  sol.u_flux_tangent = true;
  sol.self_qs = true;
  sol.sampler = [r_lo, r_hi, z_half](const SampleOptions& opt) {
    return sample_annulus(r_lo, r_hi, -z_half, z_half, opt);
  };
  return sol;
}

/// B = lambda grad(phi) with lambda^2 = r^2 E(Psi_ax): the axisymmetric
/// solution with B^2 = E(Psi_ax) constant on flux surfaces. Throws
/// NegativeEError if E is sampled negative.
template <class F>
QsSolution axisym_torus_field(F E, double r0 = 1.0, double level = 0.1) {
  const TorusSpec spec = TorusSpec::axisymmetric(r0, level);
  auto B_rule = [E, r0](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    using std::sqrt;
    const T r = cyl_radius(p);
    const T psi = detail::flux_expr(r, r0, p.z);
    const T e = E(psi);
    if (value_of(e) < 0.0)
      throw NegativeEError("axisym_torus_field: E(psi) < 0 sampled");
    return (r * sqrt(e)) * grad_phi(p);
  };
  QsSolution sol;
  sol.name = "axisym-torus";
  sol.B = VectorField::from_rule(B_rule);
  sol.u = VectorField::from_rule([](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    return Vec3T<T>{-p.y, p.x, T(0.0)};  // rotation generator
  });
  sol.zeta = ScalarField::constant(0.0);
  sol.bxu_target = VectorField::constant({0.0, 0.0, 0.0});
  sol.psi = flux_field(spec);
  sol.torus = spec;
  sol.has_torus = true;
  sol.u_flux_tangent = true;
  sol.self_qs = true;
  sol.sampler = [spec](const SampleOptions& opt) {
    return sample_torus_interior(spec, opt);
  };
  return sol;
}

/// B = lambda(mu) grad(nu) in the elliptic chart, with translational
/// symmetry u = grad(z) and zeta = integral of lambda d(mu).
template <class F>
QsSolution elliptic_translational(F lam, EllipticChart chart = EllipticChart(2.0),
                                  double mu0 = 1.0, double level = 0.1) {
  const TorusSpec spec = TorusSpec::elliptic(mu0, level, chart);
  QsSolution sol;
  sol.name = "elliptic-translational";
  sol.B = VectorField::from_rule([lam, chart](const auto& p) {
    return lam(chart.mu(p)) * chart.grad_nu(p);
  });
  sol.u = VectorField::constant({0.0, 0.0, 1.0});
  sol.zeta = ScalarField::from_value_and_grad(
      [lam, chart, mu0](const Vec3& p) {
        return line_integral([lam](double t) { return lam(t); }, mu0,
                             chart.mu(p), 1e-13);
      },
      [lam, chart](const auto& p) {
        return lam(chart.mu(p)) * chart.grad_mu(p);
      });
  sol.bxu_target = VectorField::from_rule([lam, chart](const auto& p) {
    return lam(chart.mu(p)) * chart.grad_mu(p);  // grad(zeta)
  });
  sol.psi = flux_field(spec);
  sol.torus = spec;
  sol.has_torus = true;
  sol.sampler = [spec](const SampleOptions& opt) {
    return sample_torus_interior(spec, opt);
  };
  return sol;
}

/// The displaced-torus family with h = k r phi (alpha - r phi / 2) + beta:
/// B = -f(z-h) [r grad(phi) + k (alpha - r phi) grad(z)],
/// u = r (alpha' - phi) grad(phi) + grad(r) + d/dr(k alpha^2/2 + beta) grad(z).
/// zeta = z - h; B x u = f(zeta) grad(zeta). Defined on phi in [0, 2*pi) with
/// a cut at phi = 0; the jump across the cut is the single-valuedness
/// obstruction (except at k = 0, which is axisymmetric).
template <class FA, class FB, class FF>
QsSolution local_qs(double k, FA alpha, FB beta, FF f, double r0 = 1.0,
                    double level = 0.1) {
  auto h_expr = [k, alpha, beta](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    const T r = cyl_radius(p);
    const T phi = phi_angle(p);
    return k * r * phi * (alpha(r) - 0.5 * r * phi) + beta(r);
  };
  auto zeta_expr = [h_expr](const auto& p) { return p.z - h_expr(p); };

  QsSolution sol;
  sol.name = "local-qs";
  sol.k = k;
  sol.B = VectorField::from_rule([k, alpha, f, zeta_expr](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    const T r = cyl_radius(p);
    const T phi = phi_angle(p);
    const Vec3T<T> dir =
        r * grad_phi(p) + (k * (alpha(r) - r * phi)) * unit_z<T>();
    return (-f(zeta_expr(p))) * dir;
  });
  sol.u = VectorField::from_rule([k, alpha, beta](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    const T r = cyl_radius(p);
    const T phi = phi_angle(p);
    const T ap = deriv1(alpha, r);
    const T bp = deriv1(beta, r);
    return (r * (ap - phi)) * grad_phi(p) + grad_r(p) +
           (k * alpha(r) * ap + bp) * unit_z<T>();
  });
  sol.zeta = ScalarField::from_rule(zeta_expr);
  sol.bxu_target =
      ScalarField::from_rule(
          [f, zeta_expr](const auto& p) { return f(zeta_expr(p)); }) *
      grad_field(sol.zeta);
  sol.h = ScalarField::from_rule(h_expr);
  sol.psi = ScalarField::from_rule([r0, zeta_expr](const auto& p) {
    return detail::flux_expr(cyl_radius(p), r0, zeta_expr(p));
  });
  const TorusSpec spec = TorusSpec::displaced(r0, level, sol.h);
  sol.torus = spec;
  sol.has_torus = true;
  sol.phi_cut = true;
  sol.sampler = [spec](const SampleOptions& opt) {
    return sample_torus_interior(spec, opt);
  };
  return sol;
}

inline QsSolution local_qs(double k, double r0 = 1.0, double level = 0.1) {
  return local_qs(k, detail::zero_profile(), detail::zero_profile(),
                  detail::sin_profile(), r0, level);
}

/// The flux-aligned family: zeta = Psi_T, both B and u tangent to flux
/// surfaces (h = -k r^2 phi^2 / 2):
/// B = -f(Psi_T)(r grad(phi) - k r phi grad(z)),
/// u = -(r - r0) grad(z) + (z + k r^2 phi^2 / 2)(grad(r) - r phi grad(phi)),
/// B x u = f grad(Psi_T) = grad(g).
template <class FF>
QsSolution flux_aligned_qs(double k, FF f, double r0 = 1.0,
                           double level = 0.1) {
  auto h_expr = [k](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    const T r = cyl_radius(p);
    const T phi = phi_angle(p);
    return -0.5 * k * r * r * phi * phi;
  };
  auto psi_expr = [k, r0, h_expr](const auto& p) {
    return detail::flux_expr(cyl_radius(p), r0, p.z - h_expr(p));
  };

  QsSolution sol;
  sol.name = "flux-aligned-qs";
  sol.k = k;
  sol.B = VectorField::from_rule([k, f, psi_expr](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    const T r = cyl_radius(p);
    const T phi = phi_angle(p);
    const Vec3T<T> dir = r * grad_phi(p) - (k * r * phi) * unit_z<T>();
    return (-f(psi_expr(p))) * dir;
  });
  sol.u = VectorField::from_rule([k, r0](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    const T r = cyl_radius(p);
    const T phi = phi_angle(p);
    const T zmh = p.z + 0.5 * k * r * r * phi * phi;
    return (-(r - r0)) * unit_z<T>() +
           zmh * (grad_r(p) - (r * phi) * grad_phi(p));
  });
  sol.psi = ScalarField::from_rule(psi_expr);
  sol.zeta = sol.psi;
  sol.bxu_target =
      ScalarField::from_rule(
          [f, psi_expr](const auto& p) { return f(psi_expr(p)); }) *
      grad_field(sol.psi);
  sol.h = ScalarField::from_rule(h_expr);
  const TorusSpec spec = TorusSpec::displaced(r0, level, sol.h);
  sol.torus = spec;
  sol.has_torus = true;
  sol.u_flux_tangent = true;
  sol.phi_cut = true;
  sol.sampler = [spec](const SampleOptions& opt) {
    return sample_torus_interior(spec, opt);
  };
  return sol;
}

inline QsSolution flux_aligned_qs(double k, double r0 = 1.0,
                                  double level = 0.1) {
  return flux_aligned_qs(k, detail::unit_profile(), r0, level);
}

// ---------------------------------------------------------------------------
// Displacement construction on a general harmonic chart (mu, nu, z):
//   Psi_T = [(mu-mu0)^2 + (z-h)^2]/2,  B = f(Psi_T) grad(mu) x grad(z-h),
//   u = grad(Psi_T) x grad(rho),       rho = eta / k,
//   eta = W [1 + W (dh/dnu)^2],        W = |grad mu|^2,
// where h solves -(drho/deta)(deta/dnu) W = 1, i.e. deta/dnu = -k/W.
// ---------------------------------------------------------------------------

struct DisplacementOptions {
  double nu0 = 1.5707963267948966;  // start of the nu-line integration
  double h0 = 0.0;
  // NaN selects the default eta0 = W(mu, nu0) (1 + eps) per mu-line, which
  // keeps the radicand >= eps W on the whole arc nu <= nu0 for k > 0.
  double eta0 = std::numeric_limits<double>::quiet_NaN();
  double eps = 1e-6;
  double quad_tol = 1e-12;
  double arc = 1.0;  // usable nu-arc length below nu0 (sampler range)
};

namespace detail {

template <class Chart, class T>
T displacement_eta(const Chart& chart, double k, const DisplacementOptions& o,
                   const T& mu, const T& nu) {
  T eta0 = std::isnan(o.eta0) ? chart.w_sq(mu, T(o.nu0)) * (1.0 + o.eps)
                              : T(o.eta0);
  if (k == 0.0) return eta0;
  auto integrand = [&chart, &mu](const T& s) {
    return 1.0 / chart.w_sq(mu, s);
  };
  return eta0 - k * line_integral(integrand, o.nu0, nu, o.quad_tol);
}

// dh/dnu = +sqrt(eta/W - 1)/sqrt(W); the non-negative branch is taken at the
// start and continued (the radicand cannot cross zero inside the arc).
template <class Chart, class T>
T displacement_slope(const Chart& chart, double k,
                     const DisplacementOptions& o, const T& mu, const T& nu) {
  using std::sqrt;
  const T W = chart.w_sq(mu, nu);
  const T eta = displacement_eta(chart, k, o, mu, nu);
  const T rad = eta / W - 1.0;
  const double rv = value_of(rad);
  if (rv < 0.0)
    throw NegativeRadicandError("no real dh/dnu at nu = " +
                                std::to_string(value_of(nu)));
  if (rv == 0.0) return T(0.0);
  return sqrt(rad) / sqrt(W);
}

template <class Chart, class T>
T displacement_h(const Chart& chart, double k, const DisplacementOptions& o,
                 const T& mu, const T& nu) {
  auto integrand = [&](const T& s) {
    return displacement_slope(chart, k, o, mu, s);
  };
  return o.h0 + line_integral(integrand, o.nu0, nu, o.quad_tol);
}

}  // namespace detail

/// Builds the displacement h by integrating deta/dnu = -k/W along nu at fixed
/// mu and recovering dh/dnu from eta, then assembles the field bundle. The
/// returned pair is (h as a scalar field, solution bundle). With k = 0 the
/// twist degenerates and no quasisymmetry direction u is attached.
template <class Chart, class FF>
std::pair<ScalarField, QsSolution> chart_qs_displacement(
    const Chart& chart, double k, double mu0, FF f,
    const DisplacementOptions& opt = {}, double level = 0.02) {
  auto h_expr = [chart, k, opt](const auto& p) {
    return detail::displacement_h(chart, k, opt, chart.mu(p), chart.nu(p));
  };
  auto psi_expr = [chart, k, opt, mu0](const auto& p) {
    const auto mu = chart.mu(p);
    const auto h = detail::displacement_h(chart, k, opt, mu, chart.nu(p));
    return detail::flux_expr(mu, mu0, p.z - h);
  };

  QsSolution sol;
  sol.name = "chart-qs-displacement";
  sol.k = k;
  sol.B = VectorField::from_rule([chart, k, opt, mu0, f](const auto& p) {
    using T = std::decay_t<decltype(p.x)>;
    using D = Dual3<T>;
    const T mu = chart.mu(p);
    const T nu = chart.nu(p);
    const D h_d = detail::displacement_h(
        chart, k, opt, D(mu, {T(1.0), T(0.0), T(0.0)}),
        D(nu, {T(0.0), T(1.0), T(0.0)}));
    const Vec3T<T> gm = chart.grad_mu(p);
    const Vec3T<T> gn = chart.grad_nu(p);
    const Vec3T<T> gzh = unit_z<T>() - h_d.g[0] * gm - h_d.g[1] * gn;
    const T psi = detail::flux_expr(mu, mu0, p.z - h_d.v);
    return f(psi) * cross(gm, gzh);
  });
  if (k != 0.0) {
    sol.u = VectorField::from_rule([chart, k, opt, mu0](const auto& p) {
      using T = std::decay_t<decltype(p.x)>;
      using D = Dual3<T>;
      const T mu = chart.mu(p);
      const T nu = chart.nu(p);
      const D mu_d(mu, {T(1.0), T(0.0), T(0.0)});
      const D nu_d(nu, {T(0.0), T(1.0), T(0.0)});
      const D h_d = detail::displacement_h(chart, k, opt, mu_d, nu_d);
      const D eta_d = detail::displacement_eta(chart, k, opt, mu_d, nu_d);
      const Vec3T<T> gm = chart.grad_mu(p);
      const Vec3T<T> gn = chart.grad_nu(p);
      const Vec3T<T> gzh = unit_z<T>() - h_d.g[0] * gm - h_d.g[1] * gn;
      const Vec3T<T> gpsi = (mu - mu0) * gm + (p.z - h_d.v) * gzh;
      const Vec3T<T> grho = (1.0 / k) * (eta_d.g[0] * gm + eta_d.g[1] * gn);
      return cross(gpsi, grho);
    });
  }
  sol.h = ScalarField::from_rule(h_expr);
  sol.psi = ScalarField::from_rule(psi_expr);
  sol.zeta = sol.psi;
  sol.bxu_target =
      ScalarField::from_rule(
          [f, psi_expr](const auto& p) { return f(psi_expr(p)); }) *
      grad_field(sol.psi);
  sol.torus = TorusSpec::general(
      ScalarField::from_rule([chart](const auto& p) { return chart.mu(p); }),
      mu0, level, sol.h);
  sol.has_torus = true;
  sol.u_flux_tangent = true;
  sol.sampler = [chart, k, opt, mu0, level](const SampleOptions& so) {
    Halton3 seq(so.seed);
    std::vector<Vec3> out;
    out.reserve(so.count);
    // k > 0: the radicand stays >= eps W on nu < nu0; mirror for k < 0
    const double dir = (k >= 0.0) ? -1.0 : 1.0;
    const double nu_a = opt.nu0 + dir * 0.05 * opt.arc;
    const double nu_b = opt.nu0 + dir * opt.arc;
    while (out.size() < so.count) {
      const auto u = seq.next();
      const double nu = nu_a + (nu_b - nu_a) * u[0];
      const double frac =
          so.psi_min_frac + (so.psi_max_frac - so.psi_min_frac) * u[1];
      const double rho = std::sqrt(2.0 * level * std::max(frac, 1e-6));
      const double omega = two_pi * u[2];
      const double mu = mu0 + rho * std::cos(omega);
      const double h = detail::displacement_h(chart, k, opt, mu, nu);
      out.push_back(chart.cart(mu, nu, h + rho * std::sin(omega)));
    }
    return out;
  };
  return {sol.h, sol};
}

}  // namespace qsf
