#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qsf/dual.hpp"
#include "qsf/errors.hpp"

namespace qsf {

namespace detail {

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr double gl15_x[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601700, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
inline constexpr double gl15_w[15] = {
    0.03075324199611727, 0.07036604748810812, 0.10715922046717194,
    0.13957067792615432, 0.16626920581699392, 0.18616100001556220,
    0.19843148532711158, 0.20257824192556130, 0.19843148532711158,
    0.18616100001556220, 0.16626920581699392, 0.13957067792615432,
    0.10715922046717194, 0.07036604748810812, 0.03075324199611727};

template <class F>
double gl15_panel(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 15; ++i) acc += gl15_w[i] * f(c + h * gl15_x[i]);
  return acc * h;
}

}  // namespace detail

/// Adaptive panel subdivision of [0, 1] in a normalized parameter; panel
/// boundaries are chosen on plain double evaluations so that a later generic
/// pass over the same panels stays deterministic.
template <class F>
std::vector<double> adaptive_panels(F&& f, double a, double b, double tol) {
  std::vector<double> bounds{0.0, 1.0};
  const double len = b - a;
  auto eval = [&](double s) { return f(a + s * len); };
  bool refined = true;
  int rounds = 0;
  while (refined && rounds++ < 24) {
    refined = false;
    std::vector<double> next;
    next.push_back(bounds.front());
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      const double lo = bounds[i], hi = bounds[i + 1];
      const double whole =
          detail::gl15_panel(eval, lo, hi) * len;
      const double mid = 0.5 * (lo + hi);
      const double halves = (detail::gl15_panel(eval, lo, mid) +
                             detail::gl15_panel(eval, mid, hi)) *
                            len;
      if (std::abs(whole - halves) > tol * std::max(1.0, std::abs(halves)) &&
          hi - lo > 1e-8) {
        next.push_back(mid);
        refined = true;
      }
      next.push_back(hi);
    }
    bounds.swap(next);
  }
  return bounds;
}

/// Integrates f over [a, b] where the endpoint b (and anything captured by f)
/// may carry dual derivatives; the panel layout is fixed by the caller so the
/// quadrature is an exact finite sum of generic evaluations.
template <class T, class F>
T integrate_panels(F&& f, double a, const T& b,
                   const std::vector<double>& bounds) {
  const T len = b - a;
  T acc(0.0);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const T lo = a + bounds[i] * len;
    const T hi = a + bounds[i + 1] * len;
    const T c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    T panel(0.0);
    for (int k = 0; k < 15; ++k)
      panel = panel + detail::gl15_w[k] * f(c + h * detail::gl15_x[k]);
    acc = acc + panel * h;
  }
  return acc;
}

/// One-shot adaptive line integral with a dual-capable endpoint. The panel
/// layout is decided on values only.
template <class T, class F>
T line_integral(F&& f, double a, const T& b, double tol = 1e-12) {
  auto fval = [&](double s) { return value_of(f(T(s))); };
  const auto bounds = adaptive_panels(fval, a, value_of(b), tol);
  return integrate_panels(f, a, b, bounds);
}

}  // namespace qsf
