#include "nsho/diagmodel.hpp"

#include <algorithm>
#include <cmath>

namespace nsho::diagmodel {

DiagonalGenerator DiagonalGenerator::harmonic() {
  return {Kind::HarmonicLike, [](std::int64_t n) { return Complex(double(n), 0.0); }};
}

DiagonalGenerator DiagonalGenerator::cubic_counterexample() {
  return {Kind::CubicCounterexample, [](std::int64_t n) {
            const double nd = double(n);
            return Complex(nd, nd * nd * nd);
          }};
}

DiagonalGenerator DiagonalGenerator::custom(std::function<Complex(std::int64_t)> rule) {
  return {Kind::Custom, std::move(rule)};
}

GrowthBound growth_bound(Kind kind) {
  switch (kind) {
    case Kind::HarmonicLike:
    case Kind::CubicCounterexample:
      return {-1.0};  // inf Re lambda_n = 1
    case Kind::Custom:
      throw Error(ErrorCode::ConfigInvalid, "growth bound of a custom rule is not catalogued");
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown kind");
}

double trace_norm_semigroup(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "trace norm needs t > 0");
  const double e = std::exp(-t);
  return e / (1.0 - e);
}

double perturbation_schatten_norm(double alpha, SchattenIndex q, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "norm needs t > 0");
  if (!(alpha <= 1.0)) throw Error(ErrorCode::ConfigInvalid, "alpha must be <= 1");

  if (q.is_infinite()) {
    // n -> n^alpha e^{-t n} is unimodal with real maximiser alpha / t
    double best = std::exp(-t);  // n = 1
    if (alpha > 0.0) {
      const double mode = alpha / t;
      for (double nd : {std::floor(mode), std::ceil(mode)}) {
        if (nd >= 1.0) best = std::max(best, std::pow(nd, alpha) * std::exp(-t * nd));
      }
    }
    return best;
  }

  const double s = alpha * q.q;  // exponent of n in the q-th power series
  const double rate = t * q.q;
  double sum = 0.0;
  const double mode = s > 0.0 ? s / rate : 0.0;
  for (std::int64_t n = 1;; ++n) {
    const double term = std::pow(double(n), s) * std::exp(-rate * double(n));
    sum += term;
    if (double(n) > mode && n > 1) {
      // past the mode the term ratio is bounded by the current one
      const double ratio = std::pow((double(n) + 1.0) / double(n), std::max(s, 0.0)) *
                           std::exp(-rate);
      const double tail = term * ratio / (1.0 - ratio);
      if (tail <= 1e-14 * sum) break;
    }
    if (n > 100000000)
      throw Error(ErrorCode::NonConvergence, "series did not reach the tail tolerance");
  }
  return std::pow(sum, 1.0 / q.q);
}

bool classify_pcq(double alpha, double q) {
  if (!(alpha < 1.0)) throw Error(ErrorCode::ConfigInvalid, "classification needs alpha < 1");
  if (!(q >= 1.0)) throw Error(ErrorCode::ConfigInvalid, "classification needs q >= 1");
  return q > 1.0 / (1.0 - alpha);
}

CounterexampleRegime counterexample_classify(double b) {
  if (b > -1.0) return CounterexampleRegime::Gibbs;
  if (b == -1.0) return CounterexampleRegime::UnitaryGroupOnly;
  return CounterexampleRegime::NotGenerator;
}

double resolvent_norm(Kind kind, double r, double y) {
  const GrowthBound phi = growth_bound(kind);
  if (!(r < -phi.phi))
    throw Error(ErrorCode::SpectralBoundViolated, "need r < -phi(T)");

  const DiagonalGenerator gen = kind == Kind::HarmonicLike
                                    ? DiagonalGenerator::harmonic()
                                    : DiagonalGenerator::cubic_counterexample();
  const Complex z(r, y);
  auto dist = [&](std::int64_t n) { return std::abs(gen.rule(n) - z); };

  std::int64_t lo = 1, hi = 1;
  if (kind == Kind::HarmonicLike) {
    // resonance in the real part only (r < 1 so the floor is n = 1)
    hi = std::max<std::int64_t>(2, std::int64_t(std::llround(std::max(1.0, r))) + 2);
  } else {
    const double root = std::cbrt(std::max(y, 1.0));
    const std::int64_t window = std::int64_t(std::ceil(2.0 + root));
    lo = std::max<std::int64_t>(1, std::int64_t(std::floor(root)) - window);
    hi = std::int64_t(std::ceil(root)) + window;
  }
  double dmin = dist(lo);
  for (std::int64_t n = lo + 1; n <= hi; ++n) dmin = std::min(dmin, dist(n));
  // monotone tail certificates: distances increase beyond the scanned window
  if (dist(hi + 1) < dmin || (lo > 1 && dist(lo - 1) < dmin))
    throw Error(ErrorCode::NonConvergence, "candidate window failed its monotonicity certificate");
  return 1.0 / dmin;
}

}  // namespace nsho::diagmodel
