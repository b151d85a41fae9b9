#pragma once

#include <functional>
#include <span>
#include <vector>

#include "nsho/types.hpp"

namespace nsho::mehler {

// Kernel coefficients at (theta, tau):
//   lambda = e^{-2 tau}
//   w1 = e^{i theta} lambda / (1 - lambda^2)  = (e^{i theta}/2) csch(2 tau)
//   w2 = (e^{i theta}/2) (1 + lambda^2) / (1 - lambda^2) = (e^{i theta}/2) coth(2 tau)
//   r1 = Re w1, r2 = Re w2
struct MehlerCoeffs {
  Complex lambda;
  Complex w1;
  Complex w2;
  double r1;
  double r2;
};

// r2 and r2 -/+ r1 evaluated without cancellation, via
// w2 - w1 = (e^{i theta}/2) tanh(tau) and w2 + w1 = (e^{i theta}/2) coth(tau).
struct RealConditions {
  double r2;
  double r2_minus_r1;
  double r2_plus_r1;

  bool inside() const { return r2 > 0.0 && r2_minus_r1 > 0.0 && r2_plus_r1 > 0.0; }
  double margin() const { return std::min(r2, std::min(r2_minus_r1, r2_plus_r1)); }
};

enum class AsympQuantity { AbsW1, R2, InvR2SqMinusR1Sq, HsNormSq };
enum class AsympRegime { Interior, Boundary };

// Leading small-t law  quantity(theta, e^{i omega} t) ~ coefficient * t^exponent.
// AbsW1 / R2 / InvR2SqMinusR1Sq carry the catalogued constants;
// HsNormSq constants are the oracle-validated ones (flag set).
struct AsympLaw {
  double exponent;
  double coefficient;
  AsympRegime regime;
  bool coefficient_is_oracle_validated = false;
};

struct QuadratureSpec {
  double half_width = 12.0;       // integrate over [-L, L]
  double panel_width = 0.5;
  int points_per_panel = 64;
  long max_nodes = 400000;
};

struct SampledFunction {
  std::vector<double> points;
  std::vector<Complex> values;
  double truncation_error_estimate = 0.0;
};

// Reduce Im(tau) to (-pi/2, pi/2] exploiting the i*pi period of lambda.
// Exact (bitwise) when the caller's shift by i*k*pi did not round.
Complex reduce_tau(Complex tau);

MehlerCoeffs coeffs(double theta, Complex tau);

RealConditions real_conditions(double theta, Complex tau);

// M_theta(tau, x, y) = (w1/pi)^{1/2} exp[2 w1 x y - w2 (x^2 + y^2)], principal branch.
Complex kernel(double theta, Complex tau, double x, double y);

// Exact squared Hilbert-Schmidt norm |w1| / (2 sqrt(r2^2 - r1^2)) of the
// integral operator with kernel M_theta(tau,.,.).
double hs_norm_sq(double theta, Complex tau);

// Squared HS norm of x -> chi_[x0,x1](x) applied after the kernel at tau = e^{i omega} t:
//   (|w1| / sqrt(2 pi r2)) * int_x0^x1 exp(-2 (r2^2-r1^2)/r2 x^2) dx,
// the x-integral done with erf.  Summing over a partition of the line
// reproduces hs_norm_sq.
double windowed_hs_norm_sq(double theta, double omega, double t, double x0, double x1);

AsympLaw asymp_law(double theta, double omega, AsympQuantity quantity);

// x -> int M_theta(tau, x, y) f(y) dy by composite Gauss-Legendre panels on
// [-L, L]; the returned truncation estimate bounds the discarded tails.
SampledFunction apply_semigroup(double theta, Complex tau, const std::function<Complex(double)>& f,
                                const QuadratureSpec& quad, std::span<const double> xs);

}  // namespace nsho::mehler
