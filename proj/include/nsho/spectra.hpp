#pragma once

#include <span>
#include <string>
#include <vector>

#include "nsho/types.hpp"

namespace nsho::spectra {

// Eigenvalue report over the truncation-stable window of a discretized
// operator.  beta_n^{+-} = Re(e^{+-i (pi/2 - |theta|)} lambda_n), each sorted
// non-decreasing on its own.
struct SpectralReport {
  std::vector<Complex> eigenvalues;  // trusted, ascending by real part
  std::vector<double> alpha_seq;
  std::vector<double> beta_plus_seq;
  std::vector<double> beta_minus_seq;
  double K_alpha = 0.0;  // min_{n>=3} alpha_n / n
  double K_beta = 0.0;   // min_{n>=3} beta_n^{+-} / sqrt(n), both signs
  double alpha_growth_exponent = 0.0;  // log-log fit over n >= 3
  double beta_plus_growth_exponent = 0.0;
  double beta_minus_growth_exponent = 0.0;
  int trusted_window = 0;  // length of the stable prefix before truncation
  bool corollary_applicable = true;  // false at theta = 0 (boundary rays carry the spectrum)
  double theta = 0.0;
  int dim = 0;
  int dim_refined = 0;
  double match_tolerance = 0.0;
};

// Keeps only eigenvalues that agree between A and its doubled-truncation
// refinement to match_tol relative, then derives the sequences and the
// growth statistics on the first `count` of them (window indices n >= 3).
SpectralReport spectral_report(const OperatorMatrix& A, const OperatorMatrix& A_refined,
                               double theta, int count, double match_tol = 1e-4);

std::string spectral_report_json(const SpectralReport& report);

struct PseudospecGridSpec {
  double re_min, re_max, im_min, im_max;
  int nx, ny;
};

struct PseudospecGrid {
  PseudospecGridSpec spec;
  MatrixXd values;  // sigma_min(A - z I), ny rows (im) by nx cols (re)
};

PseudospecGrid pseudospectrum(const OperatorMatrix& A, const PseudospecGridSpec& grid);

enum class RayDirection { PlusTheta, MinusTheta };

struct RayScan {
  RayDirection direction;
  double beta;
  std::vector<double> rho_values;
  std::vector<double> norms;  // 1/sigma_min(A - e^{+-i theta} rho - beta)
};

// Resolvent norms along both boundary rays with doubled-truncation deltas.
struct RayScanReport {
  RayScan plus;
  RayScan minus;
  std::vector<double> delta_plus;   // relative change under truncation doubling
  std::vector<double> delta_minus;
  int trusted_length = 0;           // ladder prefix with both deltas < 5%
  bool strictly_decreasing_plus = false;   // over the trusted prefix
  bool strictly_decreasing_minus = false;
};

RayScanReport resolvent_ray(const OperatorMatrix& A, const OperatorMatrix& A_refined, double theta,
                            double beta, std::span<const double> rho_ladder,
                            double trust_tol = 0.05);

// ||(A - z)^{-1}||_q through the singular values of the shifted matrix.
double resolvent_schatten_decay(const OperatorMatrix& A, Complex z, SchattenIndex q);

}  // namespace nsho::spectra
