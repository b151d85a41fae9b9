#pragma once

#include <vector>

#include "nsho/types.hpp"

namespace nsho::linalg {

// Full singular value spectrum, descending.  Exactly diagonal input short-
// circuits to |diagonal| (those are the singular values); everything else
// goes through a dense SVD.
VectorXd singular_values(const Eigen::Ref<const MatrixXcd>& A);

// (sum_i sigma_i^q)^{1/q}; q = inf gives sigma_max, q = 1 the trace norm.
double schatten_norm(const Eigen::Ref<const MatrixXcd>& A, SchattenIndex q);

double sigma_min(const Eigen::Ref<const MatrixXcd>& A);

// Scaling-and-squaring Pade exponential (standard double-precision backward-
// error schedule).  Refuses inputs with one-norm above the ceiling.
MatrixXcd matrix_exp(const Eigen::Ref<const MatrixXcd>& A, double one_norm_ceiling = 1e6);

struct EigenvalueSet {
  std::vector<Complex> values;  // ascending by (Re, Im)
  bool converged = true;
};

EigenvalueSet eigenvalues(const Eigen::Ref<const MatrixXcd>& A);

// Field-of-values boundary: for each angle phi on a uniform grid, the Rayleigh
// point of the top eigenvector of the Hermitian part of e^{i phi} A.
std::vector<Complex> numrange_boundary(const Eigen::Ref<const MatrixXcd>& A, int n_angles);

}  // namespace nsho::linalg
