#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "qsf/dual.hpp"
#include "qsf/vec.hpp"

using namespace qsf;

namespace {

// Scalar-argument seed: derivative carried in slot 0.
dual1 seed_x(double v) { return dual1(v, {1.0, 0.0, 0.0}); }

dual2 seed_xx(double v) {
  return dual2(dual1(v, {1.0, 0.0, 0.0}), {dual1(1.0), dual1(0.0), dual1(0.0)});
}

}  // namespace

TEST_CASE("dual arithmetic matches hand derivatives") {
  const double x = 0.73;
  auto d = seed_x(x);

  auto f = (d * d + 3.0) / (1.0 - d);  // f = (x^2+3)/(1-x)
  const double fx = (x * x + 3.0) / (1.0 - x);
  const double dfx =
      (2.0 * x * (1.0 - x) + (x * x + 3.0)) / ((1.0 - x) * (1.0 - x));
  REQUIRE(f.v == Catch::Approx(fx).epsilon(1e-14));
  REQUIRE(f.g[0] == Catch::Approx(dfx).epsilon(1e-13));
  REQUIRE(f.g[1] == 0.0);
}

TEST_CASE("dual elementary functions") {
  const double x = 1.37;
  auto d = seed_x(x);

  REQUIRE(sin(d).g[0] == Catch::Approx(std::cos(x)));
  REQUIRE(cos(d).g[0] == Catch::Approx(-std::sin(x)));
  REQUIRE(exp(d).g[0] == Catch::Approx(std::exp(x)));
  REQUIRE(log(d).g[0] == Catch::Approx(1.0 / x));
  REQUIRE(sqrt(d).g[0] == Catch::Approx(0.5 / std::sqrt(x)));
  REQUIRE(sinh(d).g[0] == Catch::Approx(std::cosh(x)));
  REQUIRE(cosh(d).g[0] == Catch::Approx(std::sinh(x)));
  REQUIRE(tanh(d).g[0] ==
          Catch::Approx(1.0 / (std::cosh(x) * std::cosh(x))));
  REQUIRE(asinh(d).g[0] == Catch::Approx(1.0 / std::sqrt(1.0 + x * x)));
  REQUIRE(pow(d, 2.5).g[0] == Catch::Approx(2.5 * std::pow(x, 1.5)));

  auto y = seed_x(0.31);
  auto phi = atan2(y, dual1(0.9));
  REQUIRE(phi.v == Catch::Approx(std::atan2(0.31, 0.9)));
  REQUIRE(phi.g[0] == Catch::Approx(0.9 / (0.9 * 0.9 + 0.31 * 0.31)));
}

TEST_CASE("nested duals give symmetric second derivatives") {
  // f(x,y,z) = sin(x*y) + z^2*x, mixed partials via seed2.
  const Vec3 p{0.6, -1.1, 0.4};
  auto q = seed2(p);
  auto f = sin(q.x * q.y) + q.z * q.z * q.x;

  const double fxy_exact =
      std::cos(p.x * p.y) - p.x * p.y * std::sin(p.x * p.y);
  REQUIRE(f.g[0].g[1] == Catch::Approx(fxy_exact).epsilon(1e-13));
  REQUIRE(f.g[1].g[0] == Catch::Approx(f.g[0].g[1]).epsilon(1e-14));
  // d2f/dz dx = 2z
  REQUIRE(f.g[2].g[0] == Catch::Approx(2.0 * p.z));
  // d2f/dz2 = 2x
  REQUIRE(f.g[2].g[2] == Catch::Approx(2.0 * p.x));
}

TEST_CASE("second derivative of a scalar chain") {
  const double x = 0.42;
  auto d = seed_xx(x);
  auto f = exp(sin(d));
  const double d2 = std::exp(std::sin(x)) *
                    (std::cos(x) * std::cos(x) - std::sin(x));
  REQUIRE(f.g[0].g[0] == Catch::Approx(d2).epsilon(1e-13));
}

TEST_CASE("vector ops on duals") {
  const Vec3 p{1.0, 2.0, -0.5};
  auto q = seed1(p);
  auto r2 = norm2(q);
  REQUIRE(r2.v == Catch::Approx(norm2(p)));
  REQUIRE(r2.g[0] == Catch::Approx(2.0 * p.x));
  REQUIRE(r2.g[1] == Catch::Approx(2.0 * p.y));

  auto c = cross(q, Vec3T<dual1>{dual1(1.0), dual1(0.0), dual1(0.0)});
  REQUIRE(c.y.v == Catch::Approx(-0.5));
  REQUIRE(c.z.v == Catch::Approx(-2.0));
}
