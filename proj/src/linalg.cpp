#include "nsho/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace nsho::linalg {

namespace {

bool is_exactly_diagonal(const Eigen::Ref<const MatrixXcd>& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      if (i != j && A(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

}  // namespace

VectorXd singular_values(const Eigen::Ref<const MatrixXcd>& A) {
  if (A.rows() == A.cols() && is_exactly_diagonal(A)) {
    VectorXd s = A.diagonal().cwiseAbs();
    std::sort(s.begin(), s.end(), std::greater<double>());
    return s;
  }
  Eigen::BDCSVD<MatrixXcd> svd(A);
  return svd.singularValues();
}

double schatten_norm(const Eigen::Ref<const MatrixXcd>& A, SchattenIndex q) {
  const VectorXd s = singular_values(A);
  if (s.size() == 0) return 0.0;
  const double smax = s(0);
  if (q.is_infinite() || smax == 0.0) return smax;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / smax, q.q);
  return smax * std::pow(acc, 1.0 / q.q);
}

double sigma_min(const Eigen::Ref<const MatrixXcd>& A) {
  const VectorXd s = singular_values(A);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

MatrixXcd matrix_exp(const Eigen::Ref<const MatrixXcd>& A, double one_norm_ceiling) {
  const double one_norm = A.cwiseAbs().colwise().sum().maxCoeff();
  if (!(one_norm <= one_norm_ceiling))
    throw Error(ErrorCode::OverflowRisk, "matrix one-norm " + std::to_string(one_norm) +
                                             " exceeds the exp ceiling");
  MatrixXcd M = A;
  return M.exp();
}

EigenvalueSet eigenvalues(const Eigen::Ref<const MatrixXcd>& A) {
  Eigen::ComplexEigenSolver<MatrixXcd> solver(A, /*computeEigenvectors=*/false);
  EigenvalueSet out;
  out.converged = solver.info() == Eigen::Success;
  const VectorXcd& v = solver.eigenvalues();
  out.values.assign(v.data(), v.data() + v.size());
  std::sort(out.values.begin(), out.values.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<Complex> numrange_boundary(const Eigen::Ref<const MatrixXcd>& A, int n_angles) {
  if (n_angles < 3) throw Error(ErrorCode::ConfigInvalid, "need at least 3 angles");
  std::vector<Complex> boundary;
  boundary.reserve(n_angles);
  for (int k = 0; k < n_angles; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_angles;
    const MatrixXcd B = std::exp(Complex(0.0, phi)) * A;
    const MatrixXcd H = 0.5 * (B + B.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(H);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::NonConvergence, "Hermitian eigensolve failed in the angle sweep");
    const VectorXcd v = es.eigenvectors().col(A.rows() - 1);  // top eigenvalue last
    const Complex p = (v.adjoint() * (A * v))(0, 0);
    boundary.push_back(p);
  }
  return boundary;
}

}  // namespace nsho::linalg
