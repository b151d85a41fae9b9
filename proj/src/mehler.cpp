#include "nsho/mehler.hpp"

#include <cmath>
#include <numbers>

#include "nsho/util.hpp"

namespace nsho::mehler {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;  // exactly pi_fl / 2

// exp(z) - 1 without cancellation for small |z|.
Complex expm1c(Complex z) {
  const double ex = std::expm1(z.real());                          // e^x - 1
  const double s = std::sin(z.imag());
  const double c2 = -2.0 * std::pow(std::sin(z.imag() / 2.0), 2);  // cos(y) - 1
  return {ex * (1.0 + c2) + c2, (ex + 1.0) * s};
}

// tau = sign * tau_r + i k (pi/2) with Im(tau_r) in (-pi/4, pi/4], Re(tau_r) >= 0.
// Every pole of sinh(2 tau) maps to tau_r = 0.
struct ReducedTau {
  Complex tau_r;
  bool half_shift;  // k odd: tanh/coth of tau swap roles at tau_r
  double sign;      // -1 when Re(tau) < 0 was reflected away
  double csch_sign; // sinh(2 tau) = csch_sign^{-1} ... sign carried by (-1)^k and reflection
};

ReducedTau reduce_half_pi(Complex tau) {
  const double k = std::round(tau.imag() / kHalfPi);
  Complex t(tau.real(), tau.imag() - k * kHalfPi);
  const bool odd = std::fmod(std::abs(k), 2.0) == 1.0;
  double sign = 1.0;
  if (t.real() < 0.0 || (t.real() == 0.0 && t.imag() < 0.0)) {
    t = -t;
    sign = -1.0;
  }
  return {t, odd, sign, (odd ? -1.0 : 1.0) * sign};
}

}  // namespace

Complex reduce_tau(Complex tau) {
  const double k = std::round(tau.imag() / kPi);
  if (k == 0.0) return tau;
  return {tau.real(), tau.imag() - k * kPi};
}

MehlerCoeffs coeffs(double theta, Complex tau) {
  const ReducedTau red = reduce_half_pi(tau);
  const Complex t = red.tau_r;
  const Complex sinh2t = std::sinh(2.0 * t);
  if (!(std::abs(sinh2t) >= 1e-300))
    throw Error(ErrorCode::PoleAtTau, "sinh(2 tau) vanishes at the requested tau");

  const Complex phase = std::exp(Complex(0.0, theta));
  // 1 - lambda^2 = -expm1(-4 t), 1 + lambda^2 = 2 + expm1(-4 t): stable near t = 0.
  const Complex em = expm1c(-4.0 * t);
  const Complex lam = std::exp(-2.0 * t);
  const Complex w1_core = phase * lam / (-em);          // (e^{i th}/2) csch(2 t)
  const Complex w2_core = 0.5 * phase * (2.0 + em) / (-em);  // (e^{i th}/2) coth(2 t)

  // hyperbolic cross-check (csch form) where representable
  if (std::isfinite(std::abs(sinh2t))) {
    const Complex w1h = 0.5 * phase / sinh2t;
    if (std::abs(w1_core - w1h) > 1e-12 * std::abs(w1_core))
      throw Error(ErrorCode::PoleAtTau, "coefficient forms disagree; too close to a pole");
  }

  // undo the reduction: sinh(2 tau) = refl_sign * (-1)^k sinh(2 t), coth(2 tau) = refl * coth(2 t)
  const double s1 = red.csch_sign;      // for csch
  const double s2 = red.sign;           // for coth (i pi periodic in 2 tau)
  MehlerCoeffs out;
  out.w1 = s1 * w1_core;
  out.w2 = s2 * w2_core;
  // lambda(tau) = e^{-2 tau} = (-i)^{2k}... e^{-2 tau} = e^{-2 sign t} e^{-i k pi}: reconstruct
  Complex lam_signed = red.sign > 0 ? lam : 1.0 / lam;
  if (red.half_shift) lam_signed = -lam_signed;
  out.lambda = lam_signed;
  out.r1 = out.w1.real();
  out.r2 = out.w2.real();
  return out;
}

RealConditions real_conditions(double theta, Complex tau) {
  const ReducedTau red = reduce_half_pi(tau);
  const Complex t = red.tau_r;
  if (!(std::abs(std::sinh(2.0 * t)) >= 1e-300))
    throw Error(ErrorCode::PoleAtTau, "sinh(2 tau) vanishes at the requested tau");
  const Complex phase = 0.5 * std::exp(Complex(0.0, theta));
  const Complex th = std::tanh(t);
  // tanh(tau + i pi/2) = coth(tau): a half shift swaps the two combinations
  Complex diff_core = phase * th;        // w2 - w1 at tau_r
  Complex sum_core = phase / th;         // w2 + w1 at tau_r
  if (red.half_shift) std::swap(diff_core, sum_core);
  RealConditions rc;
  rc.r2_minus_r1 = red.sign * diff_core.real();
  rc.r2_plus_r1 = red.sign * sum_core.real();
  rc.r2 = 0.5 * (rc.r2_minus_r1 + rc.r2_plus_r1);
  return rc;
}

Complex kernel(double theta, Complex tau, double x, double y) {
  const MehlerCoeffs c = coeffs(theta, tau);
  const Complex root = std::sqrt(c.w1 / kPi);
  // multiply x*y first so the value is symmetric in (x, y) to the last bit
  return root * std::exp(2.0 * c.w1 * (x * y) - c.w2 * (x * x + y * y));
}

double hs_norm_sq(double theta, Complex tau) {
  const MehlerCoeffs c = coeffs(theta, tau);
  const RealConditions rc = real_conditions(theta, tau);
  if (!rc.inside())
    throw Error(ErrorCode::OutsideSemiModule, "kernel is not Hilbert-Schmidt at this tau");
  const double r2sq_minus_r1sq = rc.r2_minus_r1 * rc.r2_plus_r1;
  return std::abs(c.w1) / (2.0 * std::sqrt(r2sq_minus_r1sq));
}

double windowed_hs_norm_sq(double theta, double omega, double t, double x0, double x1) {
  if (!(x0 <= x1)) throw Error(ErrorCode::ConfigInvalid, "window requires x0 <= x1");
  const Complex tau = t * std::exp(Complex(0.0, omega));
  const MehlerCoeffs c = coeffs(theta, tau);
  const RealConditions rc = real_conditions(theta, tau);
  if (!rc.inside())
    throw Error(ErrorCode::OutsideSemiModule, "kernel is not Hilbert-Schmidt at this tau");
  if (x0 == x1) return 0.0;
  const double r2sq_minus_r1sq = rc.r2_minus_r1 * rc.r2_plus_r1;
  const double k = 2.0 * r2sq_minus_r1sq / rc.r2;
  const double sk = std::sqrt(k);
  // int_x0^x1 e^{-k x^2} dx = sqrt(pi/k)/2 (erf(sk x1) - erf(sk x0))
  const double integral = 0.5 * std::sqrt(kPi) / sk * (std::erf(sk * x1) - std::erf(sk * x0));
  return std::abs(c.w1) / std::sqrt(2.0 * kPi * rc.r2) * integral;
}

AsympLaw asymp_law(double theta, double omega, AsympQuantity quantity) {
  const double edge = kPi / 2.0 - std::abs(theta);
  const double tol = 1e-12;
  if (std::abs(std::abs(omega) - kPi / 2.0) < tol || std::abs(omega) > edge + tol)
    throw Error(ErrorCode::RegimeUndefined, "omega outside [-(pi/2-|theta|), pi/2-|theta|]");
  const bool boundary = std::abs(std::abs(omega) - edge) <= tol;
  const AsympRegime regime = boundary ? AsympRegime::Boundary : AsympRegime::Interior;

  AsympLaw law;
  law.regime = regime;
  switch (quantity) {
    case AsympQuantity::AbsW1:
      law.exponent = -1.0;
      law.coefficient = 0.25;
      return law;
    case AsympQuantity::R2:
      if (boundary) {
        law.exponent = 1.0;
        law.coefficient = std::sin(4.0 * theta) / 3.0;
      } else {
        law.exponent = -1.0;
        law.coefficient = std::cos(omega + theta) / 2.0;
      }
      return law;
    case AsympQuantity::InvR2SqMinusR1Sq:
      if (boundary) {
        law.exponent = -2.0;
        law.coefficient = 3.0 / std::pow(std::sin(2.0 * theta), 2);
      } else {
        law.exponent = 0.0;
        law.coefficient = 1.0 / (std::pow(std::cos(theta), 2) - std::pow(std::sin(omega), 2));
      }
      return law;
    case AsympQuantity::HsNormSq:
      law.coefficient_is_oracle_validated = true;
      if (boundary) {
        law.exponent = -2.0;
        law.coefficient = std::sqrt(3.0) / (4.0 * std::abs(std::sin(2.0 * theta)));
      } else {
        law.exponent = -1.0;
        law.coefficient =
            0.25 / std::sqrt(std::pow(std::cos(theta), 2) - std::pow(std::sin(omega), 2));
      }
      return law;
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown asymptotic quantity");
}

SampledFunction apply_semigroup(double theta, Complex tau, const std::function<Complex(double)>& f,
                                const QuadratureSpec& quad, std::span<const double> xs) {
  const RealConditions rc = real_conditions(theta, tau);
  if (!rc.inside())
    throw Error(ErrorCode::OutsideSemiModule, "semigroup action undefined outside the semi-module");
  const double L = quad.half_width;
  const long panels = std::lround(std::ceil(2.0 * L / quad.panel_width));
  const long nodes = panels * quad.points_per_panel;
  if (nodes > quad.max_nodes)
    throw Error(ErrorCode::QuadratureBudgetExceeded,
                "requested " + std::to_string(nodes) + " nodes exceeds the budget");

  const int g = quad.points_per_panel;
  const util::GaussLegendre gl = util::gauss_legendre(g);
  const std::vector<double>& gl_x = gl.nodes;
  const std::vector<double>& gl_w = gl.weights;

  const MehlerCoeffs c = coeffs(theta, tau);
  const Complex root = std::sqrt(c.w1 / kPi);

  std::vector<double> ys, wy;
  std::vector<Complex> fy;
  ys.reserve(nodes);
  wy.reserve(nodes);
  fy.reserve(nodes);
  for (long p = 0; p < panels; ++p) {
    const double a = -L + 2.0 * L * double(p) / double(panels);
    const double b = -L + 2.0 * L * double(p + 1) / double(panels);
    for (int i = 0; i < g; ++i) {
      const double y = 0.5 * (a + b) + 0.5 * (b - a) * gl_x[i];
      ys.push_back(y);
      wy.push_back(0.5 * (b - a) * gl_w[i]);
      fy.push_back(f(y));
    }
  }

  SampledFunction out;
  out.points.assign(xs.begin(), xs.end());
  out.values.resize(xs.size());
  const Complex fL = f(L), fmL = f(-L);
  double worst_tail = 0.0;
  for (size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    Complex acc = 0.0;
    for (size_t i = 0; i < ys.size(); ++i) {
      const double y = ys[i];
      acc += wy[i] * fy[i] * std::exp(2.0 * c.w1 * x * y - c.w2 * (x * x + y * y));
    }
    out.values[j] = root * acc;
    // Gaussian tail bound: |M(x, +-L) f(+-L)| / (2 r2 (L - |r1 x / r2|))
    const double mu = std::abs(c.r1 * x / rc.r2);
    const double denom = 2.0 * rc.r2 * std::max(1.0, L - mu);
    const double tail =
        (std::abs(root * std::exp(2.0 * c.w1 * x * L - c.w2 * (x * x + L * L)) * fL) +
         std::abs(root * std::exp(-2.0 * c.w1 * x * L - c.w2 * (x * x + L * L)) * fmL)) /
        denom;
    worst_tail = std::max(worst_tail, tail);
  }
  out.truncation_error_estimate = worst_tail;
  return out;
}

}  // namespace nsho::mehler
