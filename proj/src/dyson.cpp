#include "nsho/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "nsho/linalg.hpp"
#include "nsho/util.hpp"

namespace nsho::dyson {

namespace {

constexpr double kPi = std::numbers::pi;

struct ScalarMesh {
  std::vector<double> nodes;    // in (0, 1]
  std::vector<double> weights;  // integrate over [0, 1]
};

bool exactly_diagonal(const MatrixXcd& A) {
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      if (i != j && A(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

// dense product with a shortcut when both factors are diagonal (the toy
// models run at truncations where the n^3 product would dominate everything)
MatrixXcd times(const MatrixXcd& A, const MatrixXcd& B) {
  if (A.rows() == A.cols() && B.rows() == B.cols() && exactly_diagonal(A) && exactly_diagonal(B)) {
    MatrixXcd P = MatrixXcd::Zero(A.rows(), A.cols());
    P.diagonal() = A.diagonal().cwiseProduct(B.diagonal());
    return P;
  }
  return A * B;
}

ScalarMesh graded_unit_mesh(const GradedMeshSpec& spec) {
  if (spec.singularity_exponent >= 1.0)
    throw Error(ErrorCode::SingularityTooStrong,
                "integrand exponent >= 1: the endpoint integral diverges");
  if (spec.panels < 1 || spec.points_per_panel < 2)
    throw Error(ErrorCode::ConfigInvalid, "mesh needs >= 1 panel and >= 2 points per panel");
  const double p = 1.0 / (1.0 - spec.singularity_exponent + 0.05);
  const util::GaussLegendre gl = util::gauss_legendre(spec.points_per_panel);
  const std::vector<double>& gx = gl.nodes;
  const std::vector<double>& gw = gl.weights;
  ScalarMesh mesh;
  for (int j = 0; j < spec.panels; ++j) {
    const double a = std::pow(double(j) / spec.panels, p);
    const double b = std::pow(double(j + 1) / spec.panels, p);
    for (int i = 0; i < spec.points_per_panel; ++i) {
      mesh.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * gx[i]);
      mesh.weights.push_back(0.5 * (b - a) * gw[i]);
    }
  }
  return mesh;
}

// Chebyshev-Lobatto barycentric cache of a matrix function on [0, t], with the
// abscissae mapped by v -> t v^power to cluster near the endpoint 0.
class MatrixCache {
 public:
  MatrixCache(double t, int points, double power,
              const std::function<MatrixXcd(double)>& f)
      : t_(t), power_(power) {
    v_.resize(points);
    F_.resize(points);
    for (int j = 0; j < points; ++j) {
      v_[j] = 0.5 * (1.0 - std::cos(kPi * j / (points - 1)));
      F_[j] = f(t_ * std::pow(v_[j], power_));
    }
    w_.resize(points);
    for (int j = 0; j < points; ++j) {
      double w = 1.0;
      for (int i = 0; i < points; ++i)
        if (i != j) w /= 4.0 * (v_[j] - v_[i]);
      w_[j] = w;
    }
    const double wmax = *std::max_element(w_.begin(), w_.end(),
                                          [](double a, double b) { return std::abs(a) < std::abs(b); });
    for (double& w : w_) w /= wmax;
  }

  MatrixXcd operator()(double s) const {
    const double x = std::pow(std::clamp(s / t_, 0.0, 1.0), 1.0 / power_);
    for (size_t j = 0; j < v_.size(); ++j)
      if (std::abs(x - v_[j]) < 1e-15) return F_[j];
    double csum = 0.0;
    MatrixXcd out = MatrixXcd::Zero(F_[0].rows(), F_[0].cols());
    std::vector<double> c(v_.size());
    for (size_t j = 0; j < v_.size(); ++j) {
      c[j] = w_[j] / (x - v_[j]);
      csum += c[j];
    }
    for (size_t j = 0; j < v_.size(); ++j) out.noalias() += (c[j] / csum) * F_[j];
    return out;
  }

  double node_time(int j) const { return t_ * std::pow(v_[j], power_); }
  int size() const { return int(v_.size()); }

 private:
  double t_, power_;
  std::vector<double> v_, w_;
  std::vector<MatrixXcd> F_;
};

// Shared machinery behind term_Wk and sum_series: builds W_0..W_K at time t
// with per-level quadrature and interpolation estimates.
struct Engine {
  Engine(const SemigroupProvider& provider, const MatrixXcd& A, double t,
         const DysonOptions& opt)
      : provider_(provider), A_(A), t_(t), opt_(opt) {
    if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "series time must be positive");
    mesh_ = graded_unit_mesh(opt.mesh);
    GradedMeshSpec coarse = opt.mesh;
    coarse.panels = std::max(1, opt.mesh.panels / 2);
    coarse_ = graded_unit_mesh(coarse);

    const Eigen::Index n = A.rows();
    auto eval = [&](double s) -> MatrixXcd {
      return s == 0.0 ? MatrixXcd::Identity(n, n) : provider.evaluator(s);
    };
    semi_cache_.emplace(t, opt.semigroup_cache_points, opt.semigroup_cache_grading, eval);
    b_cache_.emplace(t, opt.semigroup_cache_points, opt.semigroup_cache_grading,
                     [&](double s) -> MatrixXcd { return A * eval(s); });
    for (double u : mesh_.nodes) b_master_.push_back(A * eval(t * u));
    for (double u : coarse_.nodes) b_coarse_.push_back(A * eval(t * u));

    // level-0 cache holds the semigroup itself at the level abscissae
    level_cache_.emplace(t, opt.level_cache_points, opt.level_cache_grading, eval);
    terms.push_back(eval(t));
    quad_estimates.push_back(0.0);
  }

  // advance from level k-1 to level k
  void advance() {
    const int m = opt_.level_cache_points;
    const MatrixCache& prev = *level_cache_;
    std::vector<double> sigmas(m);
    for (int j = 0; j < m; ++j) sigmas[j] = prev.node_time(j);

    auto integral_at = [&](double sigma, const ScalarMesh& mesh) -> MatrixXcd {
      MatrixXcd acc = MatrixXcd::Zero(A_.rows(), A_.cols());
      for (size_t i = 0; i < mesh.nodes.size(); ++i) {
        const double s = sigma * mesh.nodes[i];
        acc.noalias() += (sigma * mesh.weights[i]) * (prev(sigma - s) * (*b_cache_)(s));
      }
      return acc;
    };

    std::vector<MatrixXcd> values(m);
    for (int j = 0; j < m; ++j)
      values[j] = sigmas[j] == 0.0 ? MatrixXcd::Zero(A_.rows(), A_.cols())
                                   : integral_at(sigmas[j], mesh_);

    // top-level value with exact semigroup factors at the master abscissae
    MatrixXcd top = MatrixXcd::Zero(A_.rows(), A_.cols());
    MatrixXcd top_coarse = top;
    for (size_t i = 0; i < mesh_.nodes.size(); ++i)
      top.noalias() += (t_ * mesh_.weights[i]) * (prev(t_ * (1.0 - mesh_.nodes[i])) * b_master_[i]);
    for (size_t i = 0; i < coarse_.nodes.size(); ++i)
      top_coarse.noalias() +=
          (t_ * coarse_.weights[i]) * (prev(t_ * (1.0 - coarse_.nodes[i])) * b_coarse_[i]);
    const double quad_est = (top - top_coarse).norm();

    // interpolation probe at two off-node abscissae of the fresh level
    MatrixCache next(t_, m, opt_.level_cache_grading,
                     [&](double s) -> MatrixXcd {
                       for (int j = 0; j < m; ++j)
                         if (s == sigmas[j]) return values[j];
                       return integral_at(s, mesh_);
                     });
    double interp_est = 0.0;
    for (double frac : {0.35, 0.8}) {
      const double sp = t_ * std::pow(frac, opt_.level_cache_grading);
      interp_est = std::max(interp_est, (next(sp) - integral_at(sp, mesh_)).norm());
    }

    level_cache_ = std::move(next);
    terms.push_back(top);
    quad_estimates.push_back(quad_est + interp_est);
  }

  double contraction(SchattenIndex q) const {
    double c = 0.0;
    for (size_t i = 0; i < mesh_.nodes.size(); ++i)
      c += t_ * mesh_.weights[i] * linalg::schatten_norm(b_master_[i], q);
    return c;
  }

  std::vector<MatrixXcd> terms;
  std::vector<double> quad_estimates;

 private:
  const SemigroupProvider& provider_;
  const MatrixXcd& A_;
  double t_;
  DysonOptions opt_;
  ScalarMesh mesh_, coarse_;
  std::optional<MatrixCache> semi_cache_, b_cache_, level_cache_;
  std::vector<MatrixXcd> b_master_, b_coarse_;
};

}  // namespace

SemigroupProvider make_matrix_provider(MatrixXcd T, double growth_cap) {
  SemigroupProvider p;
  p.generator = T;
  p.growth_cap = growth_cap;
  p.evaluator = [T = std::move(T)](double t) { return linalg::matrix_exp((-t * T).eval()); };
  return p;
}

double semigroup_identity_defect(const SemigroupProvider& provider,
                                 std::span<const std::pair<double, double>> pairs) {
  double worst = 0.0;
  for (const auto& [s, t] : pairs) {
    const MatrixXcd joint = provider.evaluator(s + t);
    const MatrixXcd split = provider.evaluator(s) * provider.evaluator(t);
    worst = std::max(worst, (joint - split).norm() / std::max(1e-300, joint.norm()));
  }
  return worst;
}

DysonTerm term_Wk(const SemigroupProvider& provider, const MatrixXcd& A, int k, double t,
                  const GradedMeshSpec& mesh) {
  if (k < 0) throw Error(ErrorCode::ConfigInvalid, "term index must be >= 0");
  DysonOptions opt;
  opt.mesh = mesh;
  Engine engine(provider, A, t, opt);
  for (int level = 1; level <= k; ++level) engine.advance();
  return {engine.terms[k], engine.quad_estimates[k]};
}

PerturbationSeries sum_series(const SemigroupProvider& provider, const MatrixXcd& A, int K,
                              double t, SchattenIndex q, const DysonOptions& options) {
  Engine engine(provider, A, t, options);
  const double c = engine.contraction(q);
  if (!(c < 1.0))
    throw Error(ErrorCode::ContractionNotSatisfied,
                "int_0^t ||A e^{-Ts}||_q ds = " + std::to_string(c) + " >= 1 at this t");
  for (int k = 1; k <= K; ++k) engine.advance();

  PerturbationSeries out;
  out.terms = engine.terms;
  out.contraction = c;
  out.tail_bound = provider.growth_cap * std::pow(c, K + 1) / (1.0 - c);
  out.quad_error_estimate = 0.0;
  out.lemma_bound_violated = false;
  out.sum = MatrixXcd::Zero(A.rows(), A.cols());
  for (int k = 0; k <= K; ++k) {
    out.term_norms_q.push_back(linalg::schatten_norm(engine.terms[k], q));
    out.quad_error_estimate += engine.quad_estimates[k];
    // the geometric bound M c^k covers the iterated integrals, k >= 1
    const double bound = provider.growth_cap * std::pow(c, k);
    if (k >= 1 && out.term_norms_q.back() > bound + 10.0 * engine.quad_estimates[k] + 1e-12)
      out.lemma_bound_violated = true;
    out.sum += (k % 2 == 0 ? 1.0 : -1.0) * engine.terms[k];
  }
  return out;
}

double variation_residual(const SemigroupProvider& provider, const MatrixXcd& A, double t,
                          SchattenIndex q, const DysonOptions& options) {
  if (!provider.generator)
    throw Error(ErrorCode::ConfigInvalid,
                "variation residual needs a provider that carries its generator");
  if (!(t > 0.0)) throw Error(ErrorCode::NonPositiveTime, "residual time must be positive");
  const MatrixXcd& T = *provider.generator;
  const MatrixXcd TA = T + A;
  const ScalarMesh mesh = graded_unit_mesh(options.mesh);
  // Duhamel: e^{-Tt} - e^{-(T+A)t} = int_0^t e^{-(T+A)(t-s)} A e^{-Ts} ds
  MatrixXcd residual = linalg::matrix_exp((-t * TA).eval()) - provider.evaluator(t);
  for (size_t i = 0; i < mesh.nodes.size(); ++i) {
    const double s = t * mesh.nodes[i];
    residual.noalias() += (t * mesh.weights[i]) *
                          (linalg::matrix_exp((-(t - s) * TA).eval()) * A * provider.evaluator(s));
  }
  return linalg::schatten_norm(residual, q);
}

IntegrabilityReport pcq_report(const SemigroupProvider& provider, const MatrixXcd& A,
                               SchattenIndex q, std::span<const double> t_grid,
                               double fit_margin) {
  if (t_grid.size() < 8)
    throw Error(ErrorCode::ConfigInvalid, "integrability fit needs at least 8 grid points");
  for (double t : t_grid)
    if (!(t > 0.0 && t <= 1.0))
      throw Error(ErrorCode::ConfigInvalid, "grid times must lie in (0, 1]");

  std::vector<double> lx, ly;
  for (double t : t_grid) {
    lx.push_back(std::log(t));
    ly.push_back(std::log(linalg::schatten_norm(times(A, provider.evaluator(t)), q)));
  }
  const double n = double(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double residual = 0.0;
  for (size_t i = 0; i < lx.size(); ++i)
    residual = std::max(residual, std::abs(ly[i] - (intercept + slope * lx[i])));

  IntegrabilityReport report;
  report.q = q.q;
  report.gamma_fit = -slope;
  report.fit_residual = residual;
  report.fit_margin = fit_margin;
  report.indeterminate = residual > 0.25;
  report.classified_pcq = report.gamma_fit < 1.0 - fit_margin;

  GradedMeshSpec g;
  g.panels = 8;
  g.points_per_panel = 4;
  g.singularity_exponent = std::min(report.gamma_fit, 0.94);
  const ScalarMesh mesh = graded_unit_mesh(g);
  report.integral_estimate = 0.0;
  for (size_t i = 0; i < mesh.nodes.size(); ++i)
    report.integral_estimate +=
        mesh.weights[i] * linalg::schatten_norm(times(A, provider.evaluator(mesh.nodes[i])), q);
  return report;
}

DominationCheck domination_check(const MatrixXcd& A, const MatrixXcd& B) {
  const VectorXd sv = linalg::singular_values(A);
  const double smax = sv(0), smin = sv(sv.size() - 1);
  DominationCheck out;
  out.invertible_A = smin > std::max(1e-12 * smax, 1e-300);
  out.bound_constant = 0.0;
  if (out.invertible_A) {
    // ||B A^{-1}|| via (A^T)^{-1} B^T without forming the inverse
    const MatrixXcd X = A.transpose().partialPivLu().solve(B.transpose()).transpose();
    out.bound_constant = linalg::schatten_norm(X, SchattenIndex::infinity());
  }
  return out;
}

}  // namespace nsho::dyson
