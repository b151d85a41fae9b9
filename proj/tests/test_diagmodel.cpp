#include <cmath>
#include <random>

#include <doctest.h>

#include "nsho/diagmodel.hpp"
#include "nsho/util.hpp"

using namespace nsho;
using namespace nsho::diagmodel;

namespace {

double brute_norm(double alpha, double q, double t, long n_max) {
  double sum = 0.0;
  for (long n = 1; n <= n_max; ++n)
    sum += std::pow(double(n), alpha * q) * std::exp(-t * q * double(n));
  return std::pow(sum, 1.0 / q);
}

}  // namespace

TEST_CASE("trace norm of the harmonic-like semigroup") {
  // geometric series oracle
  double series = 0.0;
  for (long n = 200; n >= 1; --n) series += std::exp(-double(n));
  CHECK(trace_norm_semigroup(1.0) == doctest::Approx(series).epsilon(1e-14));
  CHECK(trace_norm_semigroup(0.1) ==
        doctest::Approx(std::exp(-0.1) / (1.0 - std::exp(-0.1))).epsilon(1e-14));

  double prev = trace_norm_semigroup(0.5);
  for (double t : {1.0, 2.0, 5.0, 20.0}) {
    const double cur = trace_norm_semigroup(t);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(trace_norm_semigroup(50.0) < 1e-20);

  CHECK_THROWS_AS(trace_norm_semigroup(0.0), Error);
  CHECK_THROWS_AS(trace_norm_semigroup(-1.0), Error);
}

TEST_CASE("perturbation norms against direct sums") {
  CHECK(perturbation_schatten_norm(0.0, SchattenIndex(2.0), 1.0) ==
        doctest::Approx(std::sqrt(std::exp(-2.0) / (1.0 - std::exp(-2.0)))).epsilon(1e-14));
  CHECK(perturbation_schatten_norm(0.0, SchattenIndex::infinity(), 1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(perturbation_schatten_norm(0.5, SchattenIndex(4.0), 0.01) ==
        doctest::Approx(brute_norm(0.5, 4.0, 0.01, 10000)).epsilon(1e-12));
  CHECK_THROWS_AS(perturbation_schatten_norm(0.5, SchattenIndex(2.0), 0.0), Error);
}

TEST_CASE("perturbation norm is non-increasing in q") {
  for (double alpha : {0.0, 0.3, 0.7}) {
    for (double t : {0.05, 0.5}) {
      double prev = perturbation_schatten_norm(alpha, SchattenIndex(1.0), t);
      for (double q : {1.5, 2.0, 4.0, 8.0}) {
        const double cur = perturbation_schatten_norm(alpha, SchattenIndex(q), t);
        CHECK(cur <= prev * (1.0 + 1e-13));
        prev = cur;
      }
    }
  }
}

TEST_CASE("small-t slopes of the perturbation norms") {
  // finite q
  {
    std::vector<double> lx, ly;
    for (double t : util::log_spaced(1e-4, 1e-2, 9)) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(perturbation_schatten_norm(0.5, SchattenIndex(4.0), t)));
    }
    const double slope = util::fitted_slope(lx, ly);
    CHECK(std::abs(slope + (4.0 * 0.5 + 1.0) / 4.0) <= 0.02);
  }
  // q = inf: slope -alpha
  {
    std::vector<double> lx, ly;
    for (double t : util::log_spaced(1e-4, 1e-2, 9)) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(perturbation_schatten_norm(0.5, SchattenIndex::infinity(), t)));
    }
    CHECK(std::abs(util::fitted_slope(lx, ly) + 0.5) <= 0.02);
  }
}

TEST_CASE("integrability of the norm matches the classification") {
  // I(eps) = int_eps^1 ||A e^{-Tt}||_q dt by a log-spaced trapezoid; the
  // increments I(eps/100) - I(eps) shrink exactly when the singularity
  // exponent is below one.
  auto integral_from = [](double alpha, double q, double eps) {
    const std::vector<double> ts = util::log_spaced(eps, 1.0, 240);
    double acc = 0.0;
    double prev_t = ts[0],
           prev_v = perturbation_schatten_norm(alpha, SchattenIndex(q), ts[0]);
    for (size_t i = 1; i < ts.size(); ++i) {
      const double v = perturbation_schatten_norm(alpha, SchattenIndex(q), ts[i]);
      acc += 0.5 * (v + prev_v) * (ts[i] - prev_t);
      prev_t = ts[i];
      prev_v = v;
    }
    return acc;
  };
  for (const auto& [alpha, q] : std::vector<std::pair<double, double>>{
           {0.5, 1.5}, {0.5, 4.0}, {0.0, 1.0}, {0.0, 1.4}, {0.75, 3.0}, {0.75, 8.0}}) {
    const double i1 = integral_from(alpha, q, 1e-2);
    const double i2 = integral_from(alpha, q, 1e-3);
    const double i3 = integral_from(alpha, q, 1e-4);
    const bool increments_shrink = (i3 - i2) < 0.9 * (i2 - i1);
    CHECK(increments_shrink == classify_pcq(alpha, q));
  }
}

TEST_CASE("classification boundary is strict") {
  CHECK_FALSE(classify_pcq(0.0, 1.0));
  CHECK(classify_pcq(0.0, 1.5));
  CHECK_FALSE(classify_pcq(0.5, 2.0));
  CHECK(classify_pcq(0.5, 2.0 + 1e-12));
}

TEST_CASE("counterexample regimes") {
  CHECK(counterexample_classify(0.0) == CounterexampleRegime::Gibbs);
  CHECK(counterexample_classify(-0.999) == CounterexampleRegime::Gibbs);
  CHECK(counterexample_classify(-1.0) == CounterexampleRegime::UnitaryGroupOnly);
  CHECK(counterexample_classify(-2.0) == CounterexampleRegime::NotGenerator);
}

TEST_CASE("resolvent norms of the diagonal models") {
  // brute-force oracle over n <= 1e3
  auto brute = [](double r, double y) {
    double dmin = 1e300;
    for (long n = 1; n <= 1000; ++n) {
      const double nd = double(n);
      dmin = std::min(dmin, std::hypot(nd - r, nd * nd * nd - y));
    }
    return 1.0 / dmin;
  };
  CHECK(resolvent_norm(Kind::CubicCounterexample, 0.0, 1e3) ==
        doctest::Approx(brute(0.0, 1e3)).epsilon(1e-14));
  CHECK(resolvent_norm(Kind::CubicCounterexample, 0.0, 1e6) ==
        doctest::Approx(brute(0.0, 1e6)).epsilon(1e-14));
  CHECK(resolvent_norm(Kind::CubicCounterexample, 0.0, 1e3) == doctest::Approx(0.1));
  CHECK(resolvent_norm(Kind::HarmonicLike, 0.0, 0.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(resolvent_norm(Kind::HarmonicLike, 1.0, 0.0), Error);
  CHECK_THROWS_AS(resolvent_norm(Kind::CubicCounterexample, 2.0, 100.0), Error);
}

TEST_CASE("cubic resolvent decays like the cube root") {
  std::vector<double> lx, ly;
  for (double m : {10.0, 21.0, 46.0, 100.0, 215.0, 464.0, 1000.0}) {
    const double y = m * m * m;
    lx.push_back(std::log(y));
    ly.push_back(std::log(resolvent_norm(Kind::CubicCounterexample, 0.0, y)));
  }
  CHECK(std::abs(util::fitted_slope(lx, ly) + 1.0 / 3.0) <= 0.03);
}

TEST_CASE("growth bounds and generator rules") {
  CHECK(growth_bound(Kind::HarmonicLike).phi == -1.0);
  CHECK(growth_bound(Kind::CubicCounterexample).phi == -1.0);
  const DiagonalGenerator cubic = DiagonalGenerator::cubic_counterexample();
  CHECK(cubic.rule(10) == Complex(10.0, 1000.0));
  const DiagonalGenerator harm = DiagonalGenerator::harmonic();
  CHECK(harm.rule(7) == Complex(7.0, 0.0));
}
