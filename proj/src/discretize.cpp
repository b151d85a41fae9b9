#include "nsho/discretize.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace nsho::discretize {

namespace {

constexpr double kPi = std::numbers::pi;

double log_gamma_half(double alpha) {  // log Gamma((alpha+1)/2)
  return std::lgamma(0.5 * (alpha + 1.0));
}

// 1 / sum_{k<n} psi_k(x)^2 with psi_k = p_k e^{-x^2/2}, p_k orthonormal for
// the weight |x|^alpha e^{-x^2}.  The start value underflows far out, so the
// recurrence runs on (mantissa, base-2 exponent) pairs.
double compensated_weight(double x, int n, double alpha, const VectorXd& beta) {
  const double l2 = (-0.5 * x * x - 0.5 * log_gamma_half(alpha)) / std::numbers::ln2;
  int exp2_scale = int(std::floor(l2));
  double prev = 0.0;
  double cur = std::exp2(l2 - exp2_scale);  // psi_0 * 2^{-exp2_scale}
  double acc = cur * cur;                   // sum of psi^2 at scale 2^{2 exp2_scale}
  for (int k = 1; k < n; ++k) {
    const double next = (x * cur - (k >= 2 ? beta(k - 2) : 0.0) * prev) / beta(k - 1);
    prev = cur;
    cur = next;
    acc += cur * cur;
    if (std::abs(cur) > 0x1p400) {
      prev = std::ldexp(prev, -400);
      cur = std::ldexp(cur, -400);
      acc = std::ldexp(acc, -800);
      exp2_scale += 400;
    }
  }
  return std::ldexp(1.0 / acc, -2 * exp2_scale);
}

}  // namespace

PotentialSpec PotentialSpec::power_abs(double a, double alpha, double b) {
  if (!(a > 0.0)) throw Error(ErrorCode::ConfigInvalid, "potential needs a > 0");
  if (!(alpha >= 0.0 && alpha < 2.0))
    throw Error(ErrorCode::ConfigInvalid, "potential exponent must lie in [0, 2)");
  PotentialSpec v;
  v.kind = PotentialKind::PowerAbs;
  v.a = a;
  v.alpha = alpha;
  v.b = b;
  return v;
}

PotentialSpec PotentialSpec::phased_power(double a, double alpha, double b) {
  PotentialSpec v = power_abs(a, alpha, b);
  v.kind = PotentialKind::PhasedPower;
  return v;
}

PotentialSpec PotentialSpec::custom(std::function<Complex(double)> sampler) {
  PotentialSpec v;
  v.kind = PotentialKind::Custom;
  v.sampler = std::move(sampler);
  return v;
}

Complex PotentialSpec::operator()(double x) const {
  switch (kind) {
    case PotentialKind::PowerAbs:
      return Complex(a * std::pow(std::abs(x), alpha) + b, 0.0);
    case PotentialKind::PhasedPower:
      return a * std::pow(std::abs(x), alpha) * std::exp(Complex(0.0, x)) + b;
    case PotentialKind::Custom:
      return sampler(x);
  }
  throw Error(ErrorCode::ConfigInvalid, "unknown potential kind");
}

GaussRule gauss_weighted_rule(int n, double alpha) {
  if (n < 1) throw Error(ErrorCode::ConfigInvalid, "quadrature needs at least one node");
  VectorXd beta(n > 1 ? n - 1 : 1);
  for (int k = 1; k < n; ++k)
    beta(k - 1) = std::sqrt(0.5 * (k + alpha * (k % 2)));

  Eigen::SelfAdjointEigenSolver<MatrixXd> es;
  es.computeFromTridiagonal(VectorXd::Zero(n), beta.head(std::max(0, n - 1)),
                            Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NonConvergence, "Golub-Welsch eigensolve failed");
  VectorXd x = es.eigenvalues();  // ascending

  // enforce the exact +- symmetry of the even weight
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n / 2; ++i) {
    const double v = 0.5 * (x(n - 1 - i) - x(i));
    rule.nodes(n - 1 - i) = v;
    rule.nodes(i) = -v;
    const double w = compensated_weight(v, n, alpha, beta);
    rule.weights(n - 1 - i) = w;
    rule.weights(i) = w;
  }
  if (n % 2 == 1) {
    rule.nodes(n / 2) = 0.0;
    rule.weights(n / 2) = compensated_weight(0.0, n, alpha, beta);
  }
  return rule;
}

VectorXd hermite_functions(int count, double x) {
  VectorXd out(count);
  // the start value e^{-x^2/2} underflows far out while high orders are still
  // O(1) there, so run the recurrence on (mantissa, base-2 exponent) pairs
  const double l2 = (-0.5 * x * x - 0.25 * std::log(kPi)) / std::numbers::ln2;
  int scale = int(std::floor(l2));
  double prev = 0.0;
  double cur = std::exp2(l2 - scale);
  out(0) = std::ldexp(cur, scale);
  for (int k = 0; k + 1 < count; ++k) {
    const double next =
        std::sqrt(2.0 / (k + 1)) * x * cur - (k > 0 ? std::sqrt(double(k) / (k + 1)) : 0.0) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 0x1p400) {
      prev = std::ldexp(prev, -400);
      cur = std::ldexp(cur, -400);
      scale += 400;
    }
    out(k + 1) = std::ldexp(cur, scale);
  }
  return out;
}

Complex psi_n(double theta, int n, double x) {
  if (n < 0) throw Error(ErrorCode::ConfigInvalid, "order must be >= 0");
  const Complex z = std::exp(Complex(0.0, 0.5 * theta)) * x;
  Complex prev(0.0, 0.0);
  Complex cur = std::pow(kPi, -0.25) * std::exp(-0.5 * z * z);
  for (int k = 0; k < n; ++k) {
    const Complex next =
        std::sqrt(2.0 / (k + 1)) * z * cur - (k > 0 ? std::sqrt(double(k) / (k + 1)) : 0.0) * prev;
    prev = cur;
    cur = next;
    if (!(std::abs(cur) < 1e280))
      throw Error(ErrorCode::RecurrenceOverflow,
                  "Hermite recurrence left the guarded envelope at order " + std::to_string(k + 1));
  }
  return std::exp(Complex(0.0, 0.25 * theta)) * cur;
}

OperatorMatrix fock_matrix(const FockSpec& spec) {
  const int n = spec.n_basis;
  MatrixXcd H = MatrixXcd::Zero(n, n);
  const double c = std::cos(spec.theta);
  const Complex is = Complex(0.0, std::sin(spec.theta));
  for (int k = 0; k < n; ++k) H(k, k) = (2.0 * k + 1.0) * c;
  for (int k = 0; k + 2 < n; ++k) {
    const Complex v = is * std::sqrt(double(k + 1) * double(k + 2));
    H(k, k + 2) = v;
    H(k + 2, k) = v;
  }
  return {std::move(H), Provenance::Fock};
}

namespace {

MatrixXcd assemble_fock_potential(const PotentialSpec& V, int n_basis, int quad_points) {
  const double rule_alpha =
      V.kind == PotentialKind::Custom ? 0.0 : V.alpha;
  const GaussRule rule = gauss_weighted_rule(quad_points, rule_alpha);

  // node factor multiplying Phi_m Phi_n under the rule's weight
  const auto factor = [&](double x) -> Complex {
    switch (V.kind) {
      case PotentialKind::PowerAbs:
        return Complex(V.a, 0.0);
      case PotentialKind::PhasedPower:
        return V.a * std::exp(Complex(0.0, x));
      case PotentialKind::Custom:
        return V.sampler(x);
    }
    return Complex(0.0, 0.0);
  };

  MatrixXcd plus = MatrixXcd::Zero(n_basis, n_basis);   // contributions of x > 0
  MatrixXcd minus = MatrixXcd::Zero(n_basis, n_basis);  // contributions of x < 0, folded
  for (int i = quad_points / 2 + quad_points % 2; i < quad_points; ++i) {
    const double x = rule.nodes(i);
    const double w = rule.weights(i);
    const VectorXd phi = hermite_functions(n_basis, x);
    const MatrixXd outer = w * (phi * phi.transpose());
    plus.noalias() += factor(x) * outer;
    minus.noalias() += factor(-x) * outer;
  }
  // fold x < 0 through Phi_k(-x) = (-1)^k Phi_k(x): exact parity cancellation
  VectorXd sgn(n_basis);
  for (int k = 0; k < n_basis; ++k) sgn(k) = (k % 2 == 0) ? 1.0 : -1.0;
  MatrixXcd M = plus + sgn.asDiagonal() * minus * sgn.asDiagonal();

  if (quad_points % 2 == 1) {
    const double w0 = rule.weights(quad_points / 2);
    const VectorXd phi0 = hermite_functions(n_basis, 0.0);
    M.noalias() += factor(0.0) * w0 * (phi0 * phi0.transpose());
  }
  if (V.kind != PotentialKind::Custom && V.b != 0.0)
    M += V.b * MatrixXcd::Identity(n_basis, n_basis);
  // the quadrature sum is symmetric up to rounding; make it exact
  M = 0.5 * (M + M.transpose()).eval();
  return M;
}

}  // namespace

OperatorMatrix potential_fock_matrix(const PotentialSpec& V, int n_basis, int quad_points) {
  if (quad_points < 2 * n_basis + 32)
    throw Error(ErrorCode::ConfigInvalid, "quadrature needs at least 2 N + 32 points");
  MatrixXcd M = assemble_fock_potential(V, n_basis, quad_points);
  const MatrixXcd probe = assemble_fock_potential(V, n_basis, quad_points - 32);
  const double tail = (M - probe).cwiseAbs().maxCoeff();
  if (tail > 1e-8)
    throw Error(ErrorCode::QuadratureUnderResolved,
                "node-count refinement still moves entries by " + std::to_string(tail));
  return {std::move(M), Provenance::Fock};
}

OperatorMatrix grid_matrix(double theta, const PotentialSpec& V, const GridSpec& grid) {
  const int m = grid.n_points;
  const double h = grid.spacing();
  const Complex kin = std::exp(Complex(0.0, -theta));
  const Complex pot = std::exp(Complex(0.0, theta));
  MatrixXcd A = MatrixXcd::Zero(m, m);
  if (grid.scheme == Scheme::Central2) {
    const double d = 1.0 / (h * h);
    for (int j = 0; j < m; ++j) {
      A(j, j) += kin * (2.0 * d);
      if (j + 1 < m) {
        A(j, j + 1) += kin * (-d);
        A(j + 1, j) += kin * (-d);
      }
    }
  } else {
    const double d = 1.0 / (12.0 * h * h);
    for (int j = 0; j < m; ++j) {
      A(j, j) += kin * (30.0 * d);
      if (j + 1 < m) {
        A(j, j + 1) += kin * (-16.0 * d);
        A(j + 1, j) += kin * (-16.0 * d);
      }
      if (j + 2 < m) {
        A(j, j + 2) += kin * d;
        A(j + 2, j) += kin * d;
      }
    }
  }
  for (int j = 0; j < m; ++j) {
    const double x = -grid.half_width + h * (j + 1);
    A(j, j) += pot * x * x + V(x);
  }
  return {std::move(A), Provenance::Grid};
}

double suggested_half_width(int n_wanted, double a, double alpha) {
  return 1.5 * std::sqrt(2.0 * n_wanted + 1.0) * std::max(1.0, std::pow(a, 1.0 / (2.0 - alpha)));
}

}  // namespace nsho::discretize
