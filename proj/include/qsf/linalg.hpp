#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace qsf {

template <std::size_t N>
struct SymEigResult {
  std::array<double, N> values{};                 // descending
  std::array<std::array<double, N>, N> vectors{};  // vectors[k] pairs values[k]
};

/// Cyclic Jacobi eigen-decomposition for small symmetric matrices (row-major
/// input). Deterministic sweep order; converges quadratically.
template <std::size_t N>
SymEigResult<N> sym_eigen(std::array<double, N * N> a) {
  std::array<std::array<double, N>, N> v{};
  for (std::size_t i = 0; i < N; ++i) v[i][i] = 1.0;

  auto at = [&a](std::size_t i, std::size_t j) -> double& {
    return a[i * N + j];
  };

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  SymEigResult<N> r;
  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j)
      if (at(order[j], order[j]) > at(order[i], order[i]))
        std::swap(order[i], order[j]);
  for (std::size_t k = 0; k < N; ++k) {
    r.values[k] = at(order[k], order[k]);
    for (std::size_t i = 0; i < N; ++i) r.vectors[k][i] = v[i][order[k]];
  }
  return r;
}

}  // namespace qsf
