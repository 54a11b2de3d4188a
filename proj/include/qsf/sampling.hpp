#pragma once

#include <cstdint>
#include <vector>

#include "qsf/torus.hpp"

namespace qsf {

struct SampleOptions {
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  double angle_guard = 0.05;   // radians kept clear of the phi = 0 cut
  double psi_min_frac = 0.0;   // inner guard, fraction of the level
  double psi_max_frac = 0.98;  // outer guard, fraction of the level
};

namespace detail {

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Halton (2,3,5) sequence with a seeded Cranley-Patterson rotation; fully
/// deterministic for a given seed.
class Halton3 {
 public:
  explicit Halton3(std::uint64_t seed) {
    std::uint64_t s = seed * 0x9e3779b97f4a7c15ull + 1ull;
    for (int d = 0; d < 3; ++d)
      shift_[d] =
          static_cast<double>(detail::splitmix64(s) >> 11) * 0x1.0p-53;
  }

  std::array<double, 3> next() {
    ++index_;
    const std::uint64_t bases[3] = {2, 3, 5};
    std::array<double, 3> u;
    for (int d = 0; d < 3; ++d) {
      double t = detail::radical_inverse(index_, bases[d]) + shift_[d];
      u[d] = t - std::floor(t);
    }
    return u;
  }

 private:
  std::uint64_t index_ = 0;
  double shift_[3] = {0, 0, 0};
};

/// Low-discrepancy samples strictly inside {Psi < level}, rejection-sampled
/// in a chart-adapted box, with guard bands off the phi (or nu) cut and off
/// the boundary.
inline std::vector<Vec3> sample_torus_interior(const TorusSpec& spec,
                                               const SampleOptions& opt) {
  Halton3 seq(opt.seed);
  std::vector<Vec3> out;
  out.reserve(opt.count);
  const ScalarField psi = flux_field(spec);
  const double w = std::sqrt(2.0 * spec.level) * 1.02;
  const double lo = opt.psi_min_frac * spec.level;
  const double hi = opt.psi_max_frac * spec.level;
  const std::size_t max_attempts = opt.count * 256 + 1024;

  for (std::size_t attempt = 0;
       attempt < max_attempts && out.size() < opt.count; ++attempt) {
    const auto u = seq.next();
    const double ang =
        opt.angle_guard + u[0] * (two_pi - 2.0 * opt.angle_guard);
    Vec3 p;
    switch (spec.kind) {
      case TorusSpec::Kind::axisymmetric:
      case TorusSpec::Kind::displaced: {
        const double r = spec.major - w + 2.0 * w * u[1];
        if (r <= 0.0) continue;
        p = {r * std::cos(ang), r * std::sin(ang), 0.0};
        const double hv = spec.h.valid() ? spec.h.value(p) : 0.0;
        p.z = hv - w + 2.0 * w * u[2];
        break;
      }
      case TorusSpec::Kind::elliptic: {
        const EllipticChart chart(spec.chart_a);
        const double mu = spec.major - w + 2.0 * w * u[1];
        if (mu <= 0.0) continue;
        p = chart.cart(mu, ang, -w + 2.0 * w * u[2]);
        break;
      }
      case TorusSpec::Kind::general: {
        // box around the mu ~ mu0 ring; works for distance-like mu rules
        const double s = spec.major + w;
        p = {s * (2.0 * u[1] - 1.0) * 1.2, s * (2.0 * u[0] - 1.0) * 1.2, 0.0};
        const double phi = value_of(phi_angle(p));
        if (phi < opt.angle_guard || phi > two_pi - opt.angle_guard) continue;
        const double hv = spec.h.valid() ? spec.h.value(p) : 0.0;
        p.z = hv - w + 2.0 * w * u[2];
        break;
      }
    }
    const double v = psi.value(p);
    if (v >= lo && v < hi) out.push_back(p);
  }
  if (out.size() < opt.count)
    throw Error("sample_torus_interior: rejection budget exhausted");
  return out;
}

/// Samples a cylindrical annulus r in [r0, r1], z in [z0, z1] with the same
/// angular guard; used for fields not tied to a torus.
inline std::vector<Vec3> sample_annulus(double r0, double r1, double z0,
                                        double z1, const SampleOptions& opt) {
  Halton3 seq(opt.seed);
  std::vector<Vec3> out;
  out.reserve(opt.count);
  while (out.size() < opt.count) {
    const auto u = seq.next();
    const double ang =
        opt.angle_guard + u[0] * (two_pi - 2.0 * opt.angle_guard);
    const double r = r0 + (r1 - r0) * u[1];
    out.push_back(
        {r * std::cos(ang), r * std::sin(ang), z0 + (z1 - z0) * u[2]});
  }
  return out;
}

}  // namespace qsf
