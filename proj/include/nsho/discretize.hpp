#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "nsho/types.hpp"

namespace nsho::discretize {

enum class PotentialKind { PowerAbs, PhasedPower, Custom };

// Potential catalogue: PowerAbs is a|x|^alpha + b, PhasedPower is
// a e^{ix} |x|^alpha + b, Custom evaluates a user sampler.
struct PotentialSpec {
  PotentialKind kind = PotentialKind::PowerAbs;
  double a = 1.0;
  double b = 0.0;
  double alpha = 1.0;
  std::function<Complex(double)> sampler;  // Custom only

  static PotentialSpec power_abs(double a, double alpha, double b = 0.0);
  static PotentialSpec phased_power(double a, double alpha, double b = 0.0);
  static PotentialSpec custom(std::function<Complex(double)> sampler);

  Complex operator()(double x) const;
  bool is_real() const { return kind == PotentialKind::PowerAbs; }
};

struct FockSpec {
  double theta;
  int n_basis;

  FockSpec(double th, int n) : theta(th), n_basis(n) {
    if (!(std::abs(th) < std::numbers::pi / 2))
      throw Error(ErrorCode::ConfigInvalid, "|theta| must be < pi/2");
    if (n < 1) throw Error(ErrorCode::ConfigInvalid, "need at least one basis function");
  }
};

enum class Scheme { Central2, Central4 };

struct GridSpec {
  double half_width;
  int n_points;
  Scheme scheme = Scheme::Central2;

  GridSpec(double L, int m, Scheme s = Scheme::Central2) : half_width(L), n_points(m), scheme(s) {
    if (!(L > 0.0)) throw Error(ErrorCode::ConfigInvalid, "half width must be positive");
    if (m < 3) throw Error(ErrorCode::ConfigInvalid, "need at least 3 grid points");
  }

  double spacing() const { return 2.0 * half_width / (n_points + 1); }
};

// Gauss rule for the weight |x|^alpha e^{-x^2} on the line (alpha = 0 is the
// plain Hermite rule), nodes from the Golub-Welsch tridiagonal.  weights are
// the compensated w_i e^{x_i^2}, so
//   int f(x) |x|^alpha e^{-x^2} dx  ~  sum_i weights_i (f e^{-x^2})(nodes_i).
struct GaussRule {
  VectorXd nodes;    // symmetric about 0, ascending
  VectorXd weights;  // w_i e^{x_i^2}
};

GaussRule gauss_weighted_rule(int n, double alpha);

// Phi_0..Phi_{count-1} at x: L^2-normalised Hermite functions by the stable
// three-term recurrence with the Gaussian folded in.
VectorXd hermite_functions(int count, double x);

// Psi_n(x) = e^{i theta/4} Phi_n(e^{i theta/2} x), complex-argument recurrence.
Complex psi_n(double theta, int n, double x);

// N x N section of -e^{-i theta} d^2/dx^2 + e^{i theta} x^2 in the Phi basis:
// diagonal (2n+1) cos(theta), entries i sin(theta) sqrt((n+1)(n+2)) at (n, n+2).
OperatorMatrix fock_matrix(const FockSpec& spec);

// <Phi_m, V Phi_n> with the quadrature rule adapted to the potential kind;
// constant offsets go through orthonormality exactly, parity cancellations
// are exact by construction.
OperatorMatrix potential_fock_matrix(const PotentialSpec& V, int n_basis, int quad_points);

// Dirichlet finite-difference section on (-L, L).
OperatorMatrix grid_matrix(double theta, const PotentialSpec& V, const GridSpec& grid);

// Rule of thumb for a grid half-width that dominates the first n_wanted
// eigenvalues of the |x|^alpha-perturbed oscillator.
double suggested_half_width(int n_wanted, double a, double alpha);

}  // namespace nsho::discretize
