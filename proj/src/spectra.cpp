#include "nsho/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "nsho/linalg.hpp"
#include "nsho/util.hpp"

namespace nsho::spectra {

namespace {

double fit_exponent(std::span<const double> seq, int first_n) {
  // least squares slope of log(seq_n) against log(n), 1-based n >= first_n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (size_t i = first_n - 1; i < seq.size(); ++i) {
    if (!(seq[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double lx = std::log(double(i + 1)), ly = std::log(seq[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace

SpectralReport spectral_report(const OperatorMatrix& A, const OperatorMatrix& A_refined,
                               double theta, int count, double match_tol) {
  if (count < 0) throw Error(ErrorCode::ConfigInvalid, "count must be >= 0");
  const linalg::EigenvalueSet coarse = linalg::eigenvalues(A.entries);
  const linalg::EigenvalueSet fine = linalg::eigenvalues(A_refined.entries);
  if (!coarse.converged || !fine.converged)
    throw Error(ErrorCode::NonConvergence, "eigenvalue iteration did not converge");

  // stable prefix: eigenvalues reproduced by the doubled truncation
  int window = 0;
  for (const Complex lam : coarse.values) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex mu : fine.values) best = std::min(best, std::abs(mu - lam));
    if (best <= match_tol * std::max(1.0, std::abs(lam)))
      ++window;
    else
      break;
  }
  if (window < count)
    throw Error(ErrorCode::InsufficientTrustedEigenvalues,
                "only " + std::to_string(window) + " truncation-stable eigenvalues, needed " +
                    std::to_string(count));

  SpectralReport rep;
  rep.theta = theta;
  rep.dim = int(A.dim());
  rep.dim_refined = int(A_refined.dim());
  rep.match_tolerance = match_tol;
  rep.trusted_window = window;
  rep.corollary_applicable = theta != 0.0;
  rep.eigenvalues.assign(coarse.values.begin(), coarse.values.begin() + count);

  const double edge = std::numbers::pi / 2.0 - std::abs(theta);
  const Complex phase_plus = std::exp(Complex(0.0, edge));
  const Complex phase_minus = std::exp(Complex(0.0, -edge));
  for (const Complex lam : rep.eigenvalues) {
    rep.alpha_seq.push_back(lam.real());
    rep.beta_plus_seq.push_back((phase_plus * lam).real());
    rep.beta_minus_seq.push_back((phase_minus * lam).real());
  }
  std::sort(rep.beta_plus_seq.begin(), rep.beta_plus_seq.end());
  std::sort(rep.beta_minus_seq.begin(), rep.beta_minus_seq.end());

  rep.K_alpha = std::numeric_limits<double>::infinity();
  rep.K_beta = std::numeric_limits<double>::infinity();
  for (size_t i = 2; i < rep.alpha_seq.size(); ++i) {
    const double n = double(i + 1);
    rep.K_alpha = std::min(rep.K_alpha, rep.alpha_seq[i] / n);
    rep.K_beta = std::min(rep.K_beta, rep.beta_plus_seq[i] / std::sqrt(n));
    rep.K_beta = std::min(rep.K_beta, rep.beta_minus_seq[i] / std::sqrt(n));
  }
  if (rep.alpha_seq.size() < 3) rep.K_alpha = rep.K_beta = 0.0;

  rep.alpha_growth_exponent = fit_exponent(rep.alpha_seq, 3);
  rep.beta_plus_growth_exponent = fit_exponent(rep.beta_plus_seq, 3);
  rep.beta_minus_growth_exponent = fit_exponent(rep.beta_minus_seq, 3);
  return rep;
}

std::string spectral_report_json(const SpectralReport& rep) {
  nlohmann::json j;
  j["theta"] = rep.theta;
  j["dim"] = rep.dim;
  j["dim_refined"] = rep.dim_refined;
  j["match_tolerance"] = rep.match_tolerance;
  j["trusted_window"] = rep.trusted_window;
  j["corollary_applicable"] = rep.corollary_applicable;
  j["eigenvalues_re"] = nlohmann::json::array();
  j["eigenvalues_im"] = nlohmann::json::array();
  for (const Complex lam : rep.eigenvalues) {
    j["eigenvalues_re"].push_back(lam.real());
    j["eigenvalues_im"].push_back(lam.imag());
  }
  j["alpha_seq"] = rep.alpha_seq;
  j["beta_plus_seq"] = rep.beta_plus_seq;
  j["beta_minus_seq"] = rep.beta_minus_seq;
  j["K_alpha"] = rep.K_alpha;
  j["K_beta"] = rep.K_beta;
  j["alpha_growth_exponent"] = rep.alpha_growth_exponent;
  j["beta_plus_growth_exponent"] = rep.beta_plus_growth_exponent;
  j["beta_minus_growth_exponent"] = rep.beta_minus_growth_exponent;
  return j.dump(2);
}

PseudospecGrid pseudospectrum(const OperatorMatrix& A, const PseudospecGridSpec& grid) {
  if (grid.nx < 2 || grid.ny < 2)
    throw Error(ErrorCode::ConfigInvalid, "grid resolution must be at least 2x2");
  PseudospecGrid out;
  out.spec = grid;
  out.values.resize(grid.ny, grid.nx);
  util::parallel_for(grid.nx * grid.ny, [&](long idx) {
    const int iy = int(idx / grid.nx), ix = int(idx % grid.nx);
    const double re = grid.re_min + (grid.re_max - grid.re_min) * ix / double(grid.nx - 1);
    const double im = grid.im_min + (grid.im_max - grid.im_min) * iy / double(grid.ny - 1);
    MatrixXcd shifted = A.entries;
    shifted.diagonal().array() -= Complex(re, im);
    out.values(iy, ix) = linalg::sigma_min(shifted);
  });
  return out;
}

RayScanReport resolvent_ray(const OperatorMatrix& A, const OperatorMatrix& A_refined, double theta,
                            double beta, std::span<const double> rho_ladder, double trust_tol) {
  if (rho_ladder.empty()) throw Error(ErrorCode::ConfigInvalid, "empty rho ladder");
  RayScanReport rep;
  rep.plus.direction = RayDirection::PlusTheta;
  rep.minus.direction = RayDirection::MinusTheta;
  rep.plus.beta = rep.minus.beta = beta;
  rep.plus.rho_values.assign(rho_ladder.begin(), rho_ladder.end());
  rep.minus.rho_values = rep.plus.rho_values;

  auto norm_at = [&](const MatrixXcd& M, double rho, double sign) {
    MatrixXcd shifted = M;
    shifted.diagonal().array() -= std::exp(Complex(0.0, sign * theta)) * rho + beta;
    return 1.0 / linalg::sigma_min(shifted);
  };

  for (double rho : rho_ladder) {
    const double np = norm_at(A.entries, rho, +1.0);
    const double nm = norm_at(A.entries, rho, -1.0);
    const double np_ref = norm_at(A_refined.entries, rho, +1.0);
    const double nm_ref = norm_at(A_refined.entries, rho, -1.0);
    rep.plus.norms.push_back(np);
    rep.minus.norms.push_back(nm);
    rep.delta_plus.push_back(std::abs(np - np_ref) / np_ref);
    rep.delta_minus.push_back(std::abs(nm - nm_ref) / nm_ref);
  }

  int trusted = 0;
  for (size_t i = 0; i < rho_ladder.size(); ++i) {
    if (rep.delta_plus[i] < trust_tol && rep.delta_minus[i] < trust_tol)
      ++trusted;
    else
      break;
  }
  if (trusted == 0) throw Error(ErrorCode::TrustedWindowEmpty, "no rung passed the doubling gate");
  rep.trusted_length = trusted;
  rep.strictly_decreasing_plus = rep.strictly_decreasing_minus = trusted >= 2;
  for (int i = 1; i < trusted; ++i) {
    if (!(rep.plus.norms[i] < rep.plus.norms[i - 1])) rep.strictly_decreasing_plus = false;
    if (!(rep.minus.norms[i] < rep.minus.norms[i - 1])) rep.strictly_decreasing_minus = false;
  }
  return rep;
}

double resolvent_schatten_decay(const OperatorMatrix& A, Complex z, SchattenIndex q) {
  MatrixXcd shifted = A.entries;
  shifted.diagonal().array() -= z;
  const VectorXd sv = linalg::singular_values(shifted);
  const double smin = sv(sv.size() - 1);
  if (!(smin > sv(0) * 1e-14))
    throw Error(ErrorCode::SingularShift, "z is numerically an eigenvalue of A");
  // singular values of the inverse are the reciprocals in reverse order
  if (q.is_infinite()) return 1.0 / smin;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(smin / sv(i), q.q);
  return std::pow(acc, 1.0 / q.q) / smin;
}

}  // namespace nsho::spectra
