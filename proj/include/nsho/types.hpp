#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace nsho {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

enum class ErrorCode {
  PoleAtTau,
  OutsideSemiModule,
  QuadratureBudgetExceeded,
  RegimeUndefined,
  NonPositiveTime,
  SpectralBoundViolated,
  OverflowRisk,
  NonConvergence,
  SingularityTooStrong,
  ContractionNotSatisfied,
  QuadratureUnderResolved,
  RecurrenceOverflow,
  InsufficientTrustedEigenvalues,
  TrustedWindowEmpty,
  SingularShift,
  DegenerateBasis,
  ConfigInvalid,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Schatten exponent q in [1, inf]; q = inf selects the operator norm.
struct SchattenIndex {
  double q;

  SchattenIndex(double q_) : q(q_) {
    if (!(q >= 1.0)) throw Error(ErrorCode::ConfigInvalid, "Schatten index requires q >= 1");
  }

  static SchattenIndex infinity() { return SchattenIndex(std::numeric_limits<double>::infinity()); }
  bool is_infinite() const { return std::isinf(q); }
};

enum class Provenance { Fock, Grid, Diagonal, Derived };

// Dense complex matrix with a tag recording which discretization produced it.
struct OperatorMatrix {
  MatrixXcd entries;
  Provenance provenance = Provenance::Derived;

  OperatorMatrix() = default;
  OperatorMatrix(MatrixXcd m, Provenance p = Provenance::Derived)
      : entries(std::move(m)), provenance(p) {}

  Eigen::Index dim() const { return entries.rows(); }
};

}  // namespace nsho
