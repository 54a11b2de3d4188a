#pragma once

#include <cmath>

#include "qsf/errors.hpp"
#include "qsf/vec.hpp"

namespace qsf {

inline constexpr double zero_field_floor = 1e-12;

struct PressurePair {
  double p_perp = 0.0;
  double p_par = 0.0;
  double p0 = 0.0;
};

/// Closure P_perp = (P0 - B^2)/2, P_par = (P0 + B^2)/2, which balances the
/// Lorentz force of any solenoidal field. Negative values are permitted and
/// flagged downstream when P0 < B^2.
inline PressurePair anisotropic_pressures(double b2, double p0) {
  return {0.5 * (p0 - b2), 0.5 * (p0 + b2), p0};
}

using PressureTensor = Mat3;

template <class T>
Mat3T<T> pressure_tensor_t(const Vec3T<T>& B, const T& p_perp,
                           const T& p_par) {
  const T b2 = norm2(B);
  Mat3T<T> pi;
  const T iso = p_perp;
  pi(0, 0) = iso;
  pi(1, 1) = iso;
  pi(2, 2) = iso;
  const T w = (p_par - p_perp) / b2;
  const Mat3T<T> bb = outer(B, B);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) pi(i, j) = pi(i, j) + w * bb(i, j);
  return pi;
}

/// Pi = P_perp delta + (P_par - P_perp)/B^2 B B. Throws ZeroFieldError when
/// |B| vanishes with anisotropic pressures (the direction b = B/B is then
/// undefined); the isotropic tensor is returned otherwise.
inline PressureTensor pressure_tensor(const Vec3& B, const PressurePair& pp) {
  if (norm(B) <= zero_field_floor) {
    if (pp.p_par != pp.p_perp)
      throw ZeroFieldError("pressure_tensor: |B| = 0 with P_par != P_perp");
    Mat3 pi;
    pi(0, 0) = pi(1, 1) = pi(2, 2) = pp.p_perp;
    return pi;
  }
  return pressure_tensor_t(B, pp.p_perp, pp.p_par);
}

/// Pressure decomposition P_perp = P - sigma B^2/2, P_par = P + sigma B^2/2
/// with reference pressure P = p0/2. sigma = 1 reproduces the closure above.
struct AnisoClosure {
  double p0 = 4.0;
  double sigma = 1.0;

  template <class T>
  void pressures(const T& b2, T& p_perp, T& p_par) const {
    p_perp = 0.5 * p0 - 0.5 * sigma * b2;
    p_par = 0.5 * p0 + 0.5 * sigma * b2;
  }

  PressurePair pair(double b2) const {
    PressurePair pp;
    pp.p0 = p0;
    pressures(b2, pp.p_perp, pp.p_par);
    return pp;
  }
};

}  // namespace qsf
