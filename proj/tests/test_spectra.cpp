#include <cmath>
#include <numbers>

#include <doctest.h>

#include "nsho/diagmodel.hpp"
#include "nsho/discretize.hpp"
#include "nsho/linalg.hpp"
#include "nsho/spectra.hpp"

using namespace nsho;
using namespace nsho::spectra;

namespace {

constexpr double kPi = std::numbers::pi;

OperatorMatrix fock(double theta, int n) {
  return {discretize::fock_matrix({theta, n}).entries, Provenance::Fock};
}

OperatorMatrix cubic_diag(int n) {
  MatrixXcd M = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double nd = double(i + 1);
    M(i, i) = Complex(nd, nd * nd * nd);
  }
  return {std::move(M), Provenance::Diagonal};
}

}  // namespace

TEST_CASE("report for the free oscillator") {
  const SpectralReport rep = spectral_report(fock(0.4, 120), fock(0.4, 240), 0.4, 20);
  CHECK(rep.corollary_applicable);
  for (int n = 0; n < 20; ++n) {
    CHECK(std::abs(rep.eigenvalues[n] - Complex(2.0 * n + 1.0, 0.0)) <= 1e-8);
    CHECK(rep.beta_plus_seq[n] ==
          doctest::Approx((2.0 * n + 1.0) * std::sin(0.4)).epsilon(1e-8));
    CHECK(rep.beta_minus_seq[n] ==
          doctest::Approx((2.0 * n + 1.0) * std::sin(0.4)).epsilon(1e-8));
  }
  CHECK(rep.K_alpha > 0.0);
  CHECK(rep.K_beta > 0.0);
  // beta_n / sqrt(n) increases for the linear sequence
  for (int n = 3; n < 20; ++n)
    CHECK(rep.beta_plus_seq[n] / std::sqrt(n + 1.0) >
          rep.beta_plus_seq[n - 1] / std::sqrt(double(n)));
}

TEST_CASE("theta = 0 rays carry the spectrum") {
  const SpectralReport rep = spectral_report(fock(0.0, 60), fock(0.0, 120), 0.0, 10);
  CHECK_FALSE(rep.corollary_applicable);
  for (double b : rep.beta_plus_seq) CHECK(std::abs(b) <= 1e-10);
  for (double b : rep.beta_minus_seq) CHECK(std::abs(b) <= 1e-10);
}

TEST_CASE("trust filtering rejects incompatible sections") {
  // the refinement carries a different potential, so no eigenvalue is stable
  const discretize::PotentialSpec V = discretize::PotentialSpec::power_abs(2.0, 1.0);
  const MatrixXcd perturbed = discretize::fock_matrix({0.4, 120}).entries +
                              discretize::potential_fock_matrix(V, 120, 272).entries;
  CHECK_THROWS_AS(
      spectral_report(fock(0.4, 60), {perturbed, Provenance::Fock}, 0.4, 10), Error);
}

TEST_CASE("report serialises all fields") {
  const SpectralReport rep = spectral_report(fock(0.4, 40), fock(0.4, 80), 0.4, 5);
  const std::string j = spectral_report_json(rep);
  for (const char* key : {"K_alpha", "K_beta", "alpha_seq", "beta_plus_seq", "beta_minus_seq",
                          "trusted_window", "dim_refined", "match_tolerance"})
    CHECK(j.find(key) != std::string::npos);
}

TEST_CASE("pseudospectrum grid on normal matrices") {
  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  const PseudospecGrid grid = pseudospectrum({d, Provenance::Diagonal},
                                             {1.5, 2.5, -0.5, 0.5, 3, 3});
  // centre node sits at z = 2, distance 1 from either eigenvalue
  CHECK(grid.values(1, 1) == doctest::Approx(1.0).epsilon(1e-12));

  MatrixXcd jordan = MatrixXcd::Zero(2, 2);
  jordan(0, 1) = 1.0;
  const PseudospecGrid j = pseudospectrum({jordan, Provenance::Derived},
                                          {-1.0, 1.0, -1.0, 1.0, 3, 3});
  CHECK(j.values(1, 1) <= 1e-12);  // z = 0 is the (double) eigenvalue

  CHECK_THROWS_AS(pseudospectrum({d, Provenance::Diagonal}, {0, 1, 0, 1, 1, 5}), Error);
}

TEST_CASE("ray scan on a normal diagonal") {
  MatrixXcd d = MatrixXcd::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  d(2, 2) = 5.0;
  const std::vector<double> ladder = {6.0, 8.0, 12.0, 20.0};
  const RayScanReport rep = resolvent_ray({d, Provenance::Diagonal}, {d, Provenance::Diagonal},
                                          0.0, 0.0, ladder);
  CHECK(rep.trusted_length == 4);
  CHECK(rep.strictly_decreasing_plus);
  CHECK(rep.strictly_decreasing_minus);
  for (size_t i = 0; i < ladder.size(); ++i)
    CHECK(rep.plus.norms[i] == doctest::Approx(1.0 / (ladder[i] - 5.0)).epsilon(1e-12));
}

TEST_CASE("ray scan matches the diagonal resolvent rule") {
  const OperatorMatrix A = cubic_diag(1500);
  const OperatorMatrix B = cubic_diag(3000);
  const std::vector<double> ladder = {1e3, 1e4, 1e5};
  // the +i direction: z = e^{i pi/2} rho + beta
  const RayScanReport rep = resolvent_ray(A, B, kPi / 2.0, 0.0, ladder);
  for (size_t i = 0; i < ladder.size(); ++i) {
    const double want =
        diagmodel::resolvent_norm(diagmodel::Kind::CubicCounterexample, 0.0, ladder[i]);
    CHECK(rep.plus.norms[i] == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("trust gate on the ladder") {
  MatrixXcd a = MatrixXcd::Zero(2, 2), b = MatrixXcd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  b(0, 0) = 40.0;
  b(1, 1) = 50.0;
  const std::vector<double> ladder = {10.0, 20.0};
  CHECK_THROWS_AS(
      resolvent_ray({a, Provenance::Diagonal}, {b, Provenance::Diagonal}, 0.0, 0.0, ladder),
      Error);
}

TEST_CASE("resolvent Schatten norms") {
  const int n = 40;
  MatrixXcd d = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = double(i + 1);
  double harmonic = 0.0;
  for (int i = 1; i <= n; ++i) harmonic += 1.0 / i;
  CHECK(resolvent_schatten_decay({d, Provenance::Diagonal}, {0.0, 0.0}, SchattenIndex(1.0)) ==
        doctest::Approx(harmonic).epsilon(1e-13));
  CHECK(resolvent_schatten_decay({d, Provenance::Diagonal}, {0.0, 0.0},
                                 SchattenIndex::infinity()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(
      resolvent_schatten_decay({d, Provenance::Diagonal}, {1.0, 0.0}, SchattenIndex(2.0)), Error);
}

TEST_CASE("resolvent Schatten norm stabilises under refinement") {
  const discretize::PotentialSpec V = discretize::PotentialSpec::power_abs(1.0, 1.0);
  std::vector<double> values;
  for (int n : {100, 200, 400}) {
    const MatrixXcd M = discretize::fock_matrix({0.4, n}).entries +
                        discretize::potential_fock_matrix(V, n, 2 * n + 32).entries;
    values.push_back(
        resolvent_schatten_decay({M, Provenance::Fock}, {-1.0, 0.0}, SchattenIndex(1.5)));
  }
  const double d1 = std::abs(values[1] - values[0]) / values[1];
  const double d2 = std::abs(values[2] - values[1]) / values[2];
  CHECK(d2 < d1);
  CHECK(d2 < 0.02);
}

TEST_CASE("trusted eigenvalues of nonnegative potentials stay right of one") {
  const discretize::PotentialSpec V = discretize::PotentialSpec::power_abs(1.0, 1.0);
  const MatrixXcd A = discretize::fock_matrix({0.4, 120}).entries +
                      discretize::potential_fock_matrix(V, 120, 272).entries;
  const MatrixXcd B = discretize::fock_matrix({0.4, 240}).entries +
                      discretize::potential_fock_matrix(V, 240, 512).entries;
  const SpectralReport rep =
      spectral_report({A, Provenance::Fock}, {B, Provenance::Fock}, 0.4, 20);
  for (const Complex lam : rep.eigenvalues) CHECK(lam.real() >= 1.0 - 1e-9);
}
