#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "nsho/regions.hpp"

using namespace nsho;
using namespace nsho::regions;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sector membership") {
  CHECK(in_sector({1.0, 0.0}, {kPi / 2, kPi / 2}).inside);
  CHECK_FALSE(in_sector({-1.0, 0.0}, {kPi / 2, kPi / 2}).inside);
  CHECK_FALSE(in_sector({-1.0, 0.0}, {0.3, 0.7}).inside);

  // boundary ray of the matching sector
  const double edge = kPi / 2 - 0.4;
  const Complex tau = 0.3 * std::exp(Complex(0.0, edge));
  const RegionVerdict v = in_sector(tau, {edge, edge});
  CHECK(std::abs(v.margin) <= 1e-12);

  const RegionVerdict zero = in_sector({0.0, 0.0}, {1.0, 1.0});
  CHECK_FALSE(zero.inside);
  CHECK(zero.margin == -std::numeric_limits<double>::infinity());
}

TEST_CASE("semi-module membership, both methods") {
  const SemiModuleQuery inside(0.4, {1.0, 0.0}, 1e-12);
  CHECK(in_semimodule(inside, SemiModuleMethod::ArgTanh).inside);
  CHECK(in_semimodule(inside, SemiModuleMethod::MehlerReals).inside);

  const SemiModuleQuery left(0.4, {-0.5, 0.0}, 1e-12);
  CHECK_FALSE(in_semimodule(left, SemiModuleMethod::ArgTanh).inside);

  // on the sector boundary but strictly inside the larger semi-module
  const Complex tau = 0.2 * std::exp(Complex(0.0, kPi / 2 - 0.4));
  const SemiModuleQuery edge(0.4, tau, 1e-12);
  CHECK(in_semimodule(edge, SemiModuleMethod::ArgTanh).inside);
  CHECK(in_semimodule(edge, SemiModuleMethod::MehlerReals).inside);

  CHECK_THROWS_AS(in_semimodule({0.4, {0.0, kPi / 2}, 0.0}, SemiModuleMethod::MehlerReals), Error);
}

TEST_CASE("method agreement on 1e4 samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const double theta = -1.45 + 2.9 * u(rng);
    const Complex tau(-1.0 + 3.0 * u(rng), -3.0 + 6.0 * u(rng));
    const SemiModuleQuery query(theta, tau, 1e-9);
    RegionVerdict a, b;
    try {
      a = in_semimodule(query, SemiModuleMethod::ArgTanh);
      b = in_semimodule(query, SemiModuleMethod::MehlerReals);
    } catch (const Error&) {
      continue;
    }
    if (std::abs(a.margin) <= 10.0 * query.tolerance ||
        std::abs(b.margin) <= 10.0 * query.tolerance)
      continue;
    ++checked;
    CHECK(a.inside == b.inside);
  }
  CHECK(checked > 5000);
}

TEST_CASE("the sector sits inside the semi-module") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double theta = -1.3 + 2.6 * u(rng);
    const double edge = kPi / 2 - std::abs(theta);
    const Complex tau = (0.05 + 2.0 * u(rng)) * std::exp(Complex(0.0, edge * (2.0 * u(rng) - 1.0)));
    const RegionVerdict sec = in_sector(tau, {edge, edge});
    if (!sec.inside || sec.margin <= 1e-9) continue;
    CHECK(in_semimodule({theta, tau, 1e-9}, SemiModuleMethod::ArgTanh).inside);
  }
}

TEST_CASE("numerical range") {
  // oracle: min of s + t over st >= 1/4, s,t > 0 is 1 (scan the boundary curve)
  double min_real = 1e300;
  for (double t = 1e-3; t < 1e3; t *= 1.01) min_real = std::min(min_real, t + 0.25 / t);
  CHECK(min_real == doctest::Approx(1.0).epsilon(1e-4));

  CHECK_FALSE(in_numrange({0.5, 0.0}, 0.0).inside);
  CHECK(in_numrange({2.0, 0.0}, 0.0).inside);

  const Complex z = std::exp(Complex(0.0, -0.3)) * 0.5 + std::exp(Complex(0.0, 0.3)) * 0.5;
  CHECK(std::abs(in_numrange(z, 0.3).margin) <= 1e-12);
}

TEST_CASE("numerical range holds its defining samples") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 3000; ++i) {
    const double theta = -1.3 + 2.6 * u(rng);
    if (theta == 0.0) continue;
    const double s = 0.05 + 4.0 * u(rng);
    const double t = 0.25 / s + 3.0 * u(rng) + 1e-6;
    const Complex z = std::exp(Complex(0.0, -theta)) * s + std::exp(Complex(0.0, theta)) * t;
    CHECK(in_numrange(z, theta).inside);
  }
}

TEST_CASE("Rq membership") {
  CHECK(in_Rq({2.0, 0.0}, 3.0, 0.3, 2.0).inside);  // z == shift

  // boundary in omega: z = 1 + e^{i |theta|} + shift makes r = 1 exact
  const Complex z = 1.0 + std::exp(Complex(0.0, 0.3)) + 2.0;
  const RegionVerdict edge = in_Rq(z, 2.0, 0.3, 2.0);
  CHECK(std::abs(edge.margin) <= 1e-10);

  // purely imaginary z: scan oracle finds no (r, omega) solving the equations
  const Complex zi(0.0, 3.0);
  double best = 1e300;
  for (double r = 1e-4; r < 12.0; r += 1e-3)
    for (double w = -0.3; w <= 0.3; w += 0.01)
      best = std::min(best, std::abs(zi - (r + std::pow(r, 3.0) * std::exp(Complex(0.0, w)))));
  CHECK(best > 0.5);
  CHECK_FALSE(in_Rq(zi, 3.0, 0.3, 0.0).inside);
}

TEST_CASE("Rq regions widen with q at large radius") {
  for (double mag : {30.0, 60.0, 120.0}) {
    for (double arg : {0.002, 0.01, 0.03}) {
      const Complex z = mag * std::exp(Complex(0.0, arg));
      bool prev_inside = false;
      for (double q : {1.5, 2.0, 3.0, 4.0}) {
        const bool inside = in_Rq(z, q, 0.3, 0.0).inside;
        if (prev_inside) CHECK(inside);
        prev_inside = inside;
      }
    }
  }
}
