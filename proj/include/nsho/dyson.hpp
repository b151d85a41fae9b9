#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nsho/types.hpp"

namespace nsho::dyson {

// Access to t -> e^{-Tt}.  growth_cap is an M with ||e^{-Tt}||_inf <= M over
// the working range; generator carries T itself when available (needed by the
// variation-of-parameters residual).
struct SemigroupProvider {
  std::function<MatrixXcd(double)> evaluator;
  double growth_cap = 1.0;
  std::optional<MatrixXcd> generator;
};

SemigroupProvider make_matrix_provider(MatrixXcd T, double growth_cap = 1.0);

// max over pairs of ||eval(s+t) - eval(s) eval(t)|| / ||eval(s+t)||.
double semigroup_identity_defect(const SemigroupProvider& provider,
                                 std::span<const std::pair<double, double>> pairs);

// Composite Gauss-Legendre on panel edges s_j = t (j/J)^p with
// p = 1 / (1 - gamma + 0.05): clusters nodes against the s^{-gamma}
// endpoint growth of ||A e^{-Ts}||.
struct GradedMeshSpec {
  int panels = 10;
  int points_per_panel = 6;
  double singularity_exponent = 0.0;  // gamma estimate; must stay < 1
};

struct DysonOptions {
  GradedMeshSpec mesh;
  int level_cache_points = 15;        // Chebyshev cache per W_k level
  double level_cache_grading = 2.0;   // sigma = t v^2: analytic map, clusters at 0
  int semigroup_cache_points = 25;    // Chebyshev cache for e^{-Ts} inside inner integrals
  double semigroup_cache_grading = 2.0;
};

struct DysonTerm {
  MatrixXcd matrix;
  double quad_error_estimate;
};

// W_0(t) = e^{-Tt};  W_k(t) = int_0^t W_{k-1}(t-s) A e^{-Ts} ds.
DysonTerm term_Wk(const SemigroupProvider& provider, const MatrixXcd& A, int k, double t,
                  const GradedMeshSpec& mesh);

struct PerturbationSeries {
  std::vector<MatrixXcd> terms;        // W_0 .. W_K at time t
  std::vector<double> term_norms_q;
  double contraction;                  // estimate of int_0^t ||A e^{-Ts}||_q ds
  double tail_bound;                   // M c^{K+1} / (1 - c)
  double quad_error_estimate;          // summed per-term quadrature + interpolation estimates
  bool lemma_bound_violated;           // some ||W_k||_q exceeded M c^k beyond the error budget
  MatrixXcd sum;                       // sum_k (-1)^k W_k(t)
};

PerturbationSeries sum_series(const SemigroupProvider& provider, const MatrixXcd& A, int K,
                              double t, SchattenIndex q, const DysonOptions& options = {});

// || e^{-(T+A)t} - e^{-Tt} - int_0^t e^{-(T+A)(t-s)} A e^{-Ts} ds ||_q
double variation_residual(const SemigroupProvider& provider, const MatrixXcd& A, double t,
                          SchattenIndex q, const DysonOptions& options = {});

struct IntegrabilityReport {
  double q;
  double gamma_fit;          // ||A e^{-Tt}||_q ~ t^{-gamma}
  double fit_residual;       // max log-space deviation from the fitted line
  double integral_estimate;  // graded-mesh estimate of int_0^1 ||A e^{-Ts}||_q ds
  bool classified_pcq;       // gamma_fit < 1 - fit_margin
  bool indeterminate;        // fit residual too large to classify
  double fit_margin;
};

IntegrabilityReport pcq_report(const SemigroupProvider& provider, const MatrixXcd& A,
                               SchattenIndex q, std::span<const double> t_grid,
                               double fit_margin = 0.05);

struct DominationCheck {
  bool invertible_A;
  double bound_constant;  // ||B A^{-1}||_inf, reported only when invertible
};

DominationCheck domination_check(const MatrixXcd& A, const MatrixXcd& B);

}  // namespace nsho::dyson
