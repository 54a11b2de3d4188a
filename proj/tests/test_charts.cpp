#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "qsf/charts.hpp"

using namespace qsf;
using std::numbers::pi;

TEST_CASE("cyl_from_cart conventions") {
  auto q = cyl_from_cart({1.0, 0.0, 0.0});
  REQUIRE(q.r == 1.0);
  REQUIRE(q.phi == 0.0);
  REQUIRE(q.z == 0.0);

  q = cyl_from_cart({0.0, 0.0, 5.0});  // polar axis: phi defined as 0
  REQUIRE(q.r == 0.0);
  REQUIRE(q.phi == 0.0);
  REQUIRE(q.z == 5.0);

  q = cyl_from_cart({-1.0, 0.0, 2.0});
  REQUIRE(q.r == Catch::Approx(1.0));
  REQUIRE(q.phi == Catch::Approx(pi));
  REQUIRE(q.z == 2.0);
}

TEST_CASE("elliptic delta closed form") {
  EllipticChart chart(2.0);
  // focal point: both radicand terms vanish
  REQUIRE(elliptic_delta(Vec3{2.0, 0.0, 0.0}, chart) ==
          Catch::Approx(0.0).margin(1e-15));
  // origin
  REQUIRE(elliptic_delta(Vec3{0.0, 0.0, 0.3}, chart) == Catch::Approx(1.0));
  // (0, y0): expanding the radicand gives (1 + y0^2/a^2)^2 under the root
  const double y0 = 0.8;
  REQUIRE(elliptic_delta(Vec3{0.0, y0, 0.0}, chart) ==
          Catch::Approx(1.0 + y0 * y0 / 4.0).epsilon(1e-14));
  // cross-check against sin^2 nu + sinh^2 mu at nu = pi/2, sinh mu = y0/a
  const double mu = std::asinh(y0 / 2.0);
  REQUIRE(elliptic_delta(Vec3{0.0, y0, 0.0}, chart) ==
          Catch::Approx(1.0 + std::sinh(mu) * std::sinh(mu)).epsilon(1e-14));
}

TEST_CASE("elliptic_from_cart on the axes") {
  EllipticChart chart(2.0);
  auto q = elliptic_from_cart({2.0 * std::cosh(1.0), 0.0, 0.0}, chart);
  REQUIRE(q.mu == Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE(q.nu == Catch::Approx(0.0).margin(1e-12));

  q = elliptic_from_cart({0.0, 2.0 * std::sinh(1.0), 0.0}, chart);
  REQUIRE(q.mu == Catch::Approx(1.0).epsilon(1e-12));
  REQUIRE(q.nu == Catch::Approx(pi / 2).epsilon(1e-12));

  // y = 0, x <= -a maps to nu = pi
  q = elliptic_from_cart({-2.0 * std::cosh(0.5), 0.0, 0.0}, chart);
  REQUIRE(q.nu == Catch::Approx(pi).epsilon(1e-12));
}

TEST_CASE("focal segment raises") {
  EllipticChart chart(2.0);
  REQUIRE_THROWS_AS(elliptic_from_cart({0.5, 0.0, 0.0}, chart),
                    FocalSegmentError);
  REQUIRE_THROWS_AS(grad_mu(Vec3{2.0, 0.0, 0.0}, chart), FocalSegmentError);
  REQUIRE_THROWS_AS(grad_nu(Vec3{0.3, 0.0, 1.0}, chart), FocalSegmentError);
}

TEST_CASE("forward map is the oracle for the inverse") {
  EllipticChart chart(2.0);
  const double mu = 0.7, nu = 3.0 * pi / 4.0;
  auto p = cart_from_elliptic(mu, nu, 0.2, chart);
  auto q = elliptic_from_cart(p, chart);
  REQUIRE(q.mu == Catch::Approx(mu).margin(1e-10));
  REQUIRE(q.nu == Catch::Approx(nu).margin(1e-10));
}

TEST_CASE("round trip over all quadrants") {
  EllipticChart chart(2.0);
  for (int i = 0; i <= 40; ++i) {
    const double mu = 0.1 + (3.0 - 0.1) * i / 40.0;
    for (int j = 0; j < 48; ++j) {
      const double nu = two_pi * j / 48.0;
      auto p = cart_from_elliptic(mu, nu, -0.7, chart);
      auto q = elliptic_from_cart(p, chart);
      REQUIRE(std::abs(q.mu - mu) < 1e-10);
      double dn = std::abs(q.nu - nu);
      dn = std::min(dn, two_pi - dn);
      REQUIRE(dn < 1e-10);
    }
  }
}

TEST_CASE("cart_from_elliptic special points") {
  EllipticChart chart(2.0);
  auto p = cart_from_elliptic(0.0, 0.0, 1.5, chart);
  REQUIRE(p.x == Catch::Approx(2.0));
  REQUIRE(p.y == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(p.z == 1.5);

  p = cart_from_elliptic(0.0, pi, -1.0, chart);
  REQUIRE(p.x == Catch::Approx(-2.0));
  REQUIRE(std::abs(p.y) < 1e-15);

  p = cart_from_elliptic(1.0, pi / 4.0, 0.0, chart);
  REQUIRE(p.x == Catch::Approx(2.0 * std::cosh(1.0) * std::sqrt(0.5)));
  REQUIRE(p.y == Catch::Approx(2.0 * std::sinh(1.0) * std::sqrt(0.5)));
}

TEST_CASE("gradients on the major axis align with Cartesian axes") {
  EllipticChart chart(2.0);
  const Vec3 p{2.0 * std::cosh(0.8), 0.0, 0.0};  // nu = 0, mu = 0.8
  auto gm = grad_mu(p, chart);
  auto gn = grad_nu(p, chart);
  REQUIRE(gm.y == 0.0);
  REQUIRE(gm.x > 0.0);
  REQUIRE(gn.x == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(gn.y > 0.0);
}

TEST_CASE("|grad mu|^2 derived value on the minor axis") {
  EllipticChart chart(2.0);
  const double y0 = 1.3;
  auto gm = grad_mu(Vec3{0.0, y0, 0.0}, chart);
  const double expected = 1.0 / (4.0 * (1.0 + y0 * y0 / 4.0));
  REQUIRE(norm2(gm) == Catch::Approx(expected).epsilon(1e-13));
}

TEST_CASE("harmonic orthogonality at random off-focal points") {
  EllipticChart chart(2.0);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> umu(0.15, 2.0), unu(0.0, two_pi);
  for (int i = 0; i < 20; ++i) {
    const double mu = umu(rng), nu = unu(rng);
    auto p = cart_from_elliptic(mu, nu, 0.0, chart);
    if (p.y == 0.0) p.y = 1e-9;  // keep strictly off the axis line
    auto gm = grad_mu(p, chart);
    auto gn = grad_nu(p, chart);
    REQUIRE(std::abs(dot(gm, gn)) < 1e-12);
    REQUIRE(std::abs(norm2(gm) - norm2(gn)) < 1e-15);
    // |grad mu| = 1/(a sqrt(delta))
    const double d = elliptic_delta(p, chart);
    REQUIRE(norm2(gm) == Catch::Approx(1.0 / (4.0 * d)).epsilon(1e-12));
  }
}

TEST_CASE("delta identity against chart coordinates") {
  EllipticChart chart(2.0);
  for (int i = 1; i <= 12; ++i) {
    const double mu = 0.1 + 0.2 * i;
    const double nu = 0.37 + 0.45 * i;
    auto p = cart_from_elliptic(mu, wrap_angle(nu), 0.0, chart);
    const double expect =
        std::sin(nu) * std::sin(nu) + std::sinh(mu) * std::sinh(mu);
    REQUIRE(elliptic_delta(p, chart) == Catch::Approx(expect).margin(1e-10));
  }
}

TEST_CASE("finite-difference Laplacians of mu and nu vanish") {
  EllipticChart chart(2.0);
  const double h = 1e-4;
  auto lap = [&](auto&& f, const Vec3& p) {
    double acc = 0.0;
    const Vec3 es[3] = {{h, 0, 0}, {0, h, 0}, {0, 0, h}};
    for (const auto& e : es)
      acc += (f(p + e) - 2.0 * f(p) + f(p - e)) / (h * h);
    return acc;
  };
  auto fmu = [&](const Vec3& p) { return chart.mu(p); };
  auto fnu = [&](const Vec3& p) { return chart.nu(p); };
  for (int j = 0; j < 16; ++j) {
    const double nu = 0.15 + j * (two_pi - 0.3) / 16.0;
    auto p = cart_from_elliptic(1.0, nu, 0.0, chart);
    if (std::abs(p.y) < 2e-4) continue;  // FD stencil must not cross y = 0
    REQUIRE(std::abs(lap(fmu, p)) < 1e-5);
    REQUIRE(std::abs(lap(fnu, p)) < 1e-5);
  }
}

TEST_CASE("log-cylindrical chart satisfies the same identities") {
  LogCylChart chart;
  const Vec3 p{0.9, -0.6, 0.4};
  auto gm = chart.grad_mu(p);
  auto gn = chart.grad_nu(p);
  REQUIRE(std::abs(dot(gm, gn)) < 1e-16);
  REQUIRE(std::abs(norm2(gm) - norm2(gn)) < 1e-16);
  const double r2 = p.x * p.x + p.y * p.y;
  REQUIRE(norm2(gm) == Catch::Approx(1.0 / r2));
  REQUIRE(chart.w_sq(chart.mu(p), chart.nu(p)) ==
          Catch::Approx(1.0 / r2).epsilon(1e-13));
}

TEST_CASE("dual-mode chart evaluation matches closed-form gradients") {
  EllipticChart chart(2.0);
  auto p = cart_from_elliptic(1.1, 2.4, 0.3, chart);
  auto jm = chart.mu(seed1(p));
  auto gm = grad_mu(p, chart);
  REQUIRE(jm.g[0] == Catch::Approx(gm.x).epsilon(1e-11));
  REQUIRE(jm.g[1] == Catch::Approx(gm.y).epsilon(1e-11));

  auto jn = chart.nu(seed1(p));
  auto gn = grad_nu(p, chart);
  REQUIRE(jn.g[0] == Catch::Approx(gn.x).epsilon(1e-11));
  REQUIRE(jn.g[1] == Catch::Approx(gn.y).epsilon(1e-11));

  // second derivatives of nu from the lifted form agree with FD of grad_nu
  auto jn2 = chart.nu(seed2(p));
  const double h = 1e-6;
  auto gp = grad_nu(Vec3{p.x + h, p.y, p.z}, chart);
  auto gm2 = grad_nu(Vec3{p.x - h, p.y, p.z}, chart);
  REQUIRE(jn2.g[0].g[0] ==
          Catch::Approx((gp.x - gm2.x) / (2 * h)).margin(1e-6));
  REQUIRE(jn2.g[1].g[0] ==
          Catch::Approx((gp.y - gm2.y) / (2 * h)).margin(1e-6));
}
