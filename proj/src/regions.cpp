#include "nsho/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nsho/mehler.hpp"

namespace nsho::regions {

namespace {
constexpr double kPi = std::numbers::pi;
}

RegionVerdict in_sector(Complex tau, const Sector& sector) {
  if (tau == Complex(0.0, 0.0))
    return {false, -std::numeric_limits<double>::infinity()};
  const double arg = std::arg(tau);
  const double margin = std::min(arg + sector.alpha, sector.beta - arg);
  return {margin > 0.0, margin};
}

RegionVerdict in_semimodule(const SemiModuleQuery& query, SemiModuleMethod method) {
  const double cap = kPi / 2.0 - std::abs(query.theta);
  if (method == SemiModuleMethod::ArgTanh) {
    const double re = query.tau.real();
    if (re <= 0.0) return {false, re};
    const double a = std::abs(std::arg(std::tanh(query.tau)));
    const double margin = std::min(re, cap - a);
    return {margin > 0.0, margin};
  }
  const mehler::RealConditions rc = mehler::real_conditions(query.theta, query.tau);
  const double margin = rc.margin();
  return {margin > 0.0, margin};
}

RegionVerdict in_numrange(Complex z, double theta, double tolerance) {
  if (!(std::abs(theta) < kPi / 2.0))
    throw Error(ErrorCode::ConfigInvalid, "|theta| must be < pi/2");
  if (theta == 0.0) {
    // degenerate basis: the set is the half-line [1, inf)
    if (std::abs(z.imag()) > tolerance) return {false, -std::abs(z.imag())};
    const double margin = z.real() - 1.0;
    return {margin > 0.0, margin};
  }
  // solve z = e^{-i theta} s + e^{i theta} t as a real 2x2 system
  const double s = 0.5 * (z.real() / std::cos(theta) - z.imag() / std::sin(theta));
  const double t = 0.5 * (z.real() / std::cos(theta) + z.imag() / std::sin(theta));
  const double margin = std::min({s, t, s * t - 0.25});
  return {margin > 0.0, margin};
}

RegionVerdict in_Rq(Complex z, double q, double theta, double shift) {
  if (!(q > 1.0)) throw Error(ErrorCode::ConfigInvalid, "Rq requires q > 1");
  const Complex u0 = z - shift;
  const double mod0 = std::abs(u0);
  if (mod0 == 0.0) return {true, 0.0};  // r = 0

  const double cap = std::abs(theta);
  const auto residual = [&](double r) { return std::abs(u0 - r) - std::pow(r, q); };

  // bracket the modulus roots; extend past 2|z-shift| when r^q - r has not yet
  // caught up (small |z - shift| with q near 1)
  double rmax = 2.0 * std::max(1.0, mod0);
  int grow = 0;
  while (std::pow(rmax, q) - rmax < mod0 && grow++ < 64) rmax *= 2.0;

  const int scan = 256;
  const int max_iter = 200;
  bool converged = true;
  double best_margin = -std::numeric_limits<double>::infinity();
  bool any_root = false;
  double prev_r = 0.0, prev_f = residual(0.0);
  for (int i = 1; i <= scan; ++i) {
    const double r = rmax * double(i) / double(scan);
    const double f = residual(r);
    if ((prev_f > 0.0) != (f > 0.0) || f == 0.0) {
      // golden-section shrink of |residual| inside the sign-change bracket
      double a = prev_r, b = r;
      const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
      double c = b - gr * (b - a), d = a + gr * (b - a);
      double fc = std::abs(residual(c)), fd = std::abs(residual(d));
      int it = 0;
      for (; it < max_iter && (b - a) > 1e-13 * rmax; ++it) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - gr * (b - a);
          fc = std::abs(residual(c));
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + gr * (b - a);
          fd = std::abs(residual(d));
        }
      }
      const double rstar = 0.5 * (a + b);
      if (it >= max_iter && std::abs(residual(rstar)) > 1e-10 * std::max(1.0, mod0)) {
        converged = false;
      } else {
        any_root = true;
        const Complex urest = u0 - rstar;
        const double ang = std::abs(urest) == 0.0 ? 0.0 : std::abs(std::arg(urest));
        best_margin = std::max(best_margin, cap - ang);
      }
    }
    prev_r = r;
    prev_f = f;
  }

  if (!converged && !any_root)
    return {false, std::numeric_limits<double>::quiet_NaN(), false};
  if (!any_root) {
    // no modulus root located: outside, slack measured by the closest approach
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= scan; ++i)
      worst = std::min(worst, std::abs(residual(rmax * double(i) / double(scan))));
    return {false, -worst};
  }
  return {best_margin > 0.0, best_margin, converged};
}

}  // namespace nsho::regions
