#pragma once

#include <cmath>
#include <numbers>

#include "nsho/types.hpp"

namespace nsho::regions {

// Open sector S(-alpha, beta) = { r e^{i w} : r > 0, -alpha < w < beta }.
struct Sector {
  double alpha;
  double beta;

  Sector(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0 && a <= std::numbers::pi / 2 && b > 0.0 && b <= std::numbers::pi / 2))
      throw Error(ErrorCode::ConfigInvalid, "sector angles must lie in (0, pi/2]");
  }
};

struct SemiModuleQuery {
  double theta;
  Complex tau;
  double tolerance = 0.0;

  SemiModuleQuery(double th, Complex t, double tol = 0.0) : theta(th), tau(t), tolerance(tol) {
    if (!(std::abs(th) < std::numbers::pi / 2))
      throw Error(ErrorCode::ConfigInvalid, "|theta| must be < pi/2");
    if (!std::isfinite(tol) || tol < 0.0)
      throw Error(ErrorCode::ConfigInvalid, "tolerance must be finite and >= 0");
  }
};

// Membership with a signed distance-like slack to the nearest violated
// constraint.  margin > tolerance forces inside, margin < -tolerance forces
// outside; the strip in between is boundary territory and callers decide.
struct RegionVerdict {
  bool inside;
  double margin;
  bool converged = true;  // false only for Rq root searches that hit the budget
};

enum class SemiModuleMethod { ArgTanh, MehlerReals };

RegionVerdict in_sector(Complex tau, const Sector& sector);

RegionVerdict in_semimodule(const SemiModuleQuery& query, SemiModuleMethod method);

// Numerical-range test: z = e^{-i theta} s + e^{i theta} t with s, t > 0 and
// s t >= 1/4.  At theta = 0 the set degenerates to [1, inf).
RegionVerdict in_numrange(Complex z, double theta, double tolerance = 1e-12);

// z - shift = r + r^q e^{i w} for some r >= 0, |w| <= |theta|; decided by a
// bracketed root search on |z - shift - r| = r^q followed by the angular test.
RegionVerdict in_Rq(Complex z, double q, double theta, double shift);

}  // namespace nsho::regions
