#include <cmath>
#include <numbers>

#include <doctest.h>

#include "nsho/discretize.hpp"
#include "nsho/linalg.hpp"
#include "nsho/util.hpp"

using namespace nsho;
using namespace nsho::discretize;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("oscillator section at theta = 0 is the odd integers") {
  const OperatorMatrix H = fock_matrix({0.0, 3});
  CHECK(H.entries(0, 0) == Complex(1.0, 0.0));
  CHECK(H.entries(1, 1) == Complex(3.0, 0.0));
  CHECK(H.entries(2, 2) == Complex(5.0, 0.0));
  CHECK(H.entries(0, 2) == Complex(0.0, 0.0));
}

TEST_CASE("oscillator section entry against a quadrature oracle") {
  // H_theta Phi_0 = e^{-i theta}(1 - x^2) Phi_0 + e^{i theta} x^2 Phi_0 from
  // the Gaussian's second derivative; integrate Phi_2 against it
  const double theta = 0.5;
  const util::GaussLegendre gl = util::gauss_legendre(40);
  Complex acc = 0.0;
  const int panels = 24;
  const double L = 9.0;
  for (int p = 0; p < panels; ++p) {
    const double a = -L + 2.0 * L * p / panels;
    const double b = -L + 2.0 * L * (p + 1) / panels;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      const VectorXd phi = hermite_functions(3, x);
      const Complex hphi0 = std::exp(Complex(0.0, -theta)) * (1.0 - x * x) * phi(0) +
                            std::exp(Complex(0.0, theta)) * x * x * phi(0);
      acc += 0.5 * (b - a) * gl.weights[i] * phi(2) * hphi0;
    }
  }
  const OperatorMatrix H = fock_matrix({theta, 4});
  CHECK(std::abs(H.entries(2, 0) - acc) <= 1e-12);
  CHECK(std::abs(acc - Complex(0.0, std::sin(theta) * std::sqrt(2.0))) <= 1e-12);
}

TEST_CASE("oscillator section is complex symmetric") {
  const OperatorMatrix H = fock_matrix({0.7, 24});
  CHECK((H.entries - H.entries.transpose()).norm() == 0.0);
}

TEST_CASE("weighted Gauss rules integrate their moments exactly") {
  for (double alpha : {0.0, 0.5, 1.0, 1.7}) {
    const GaussRule rule = gauss_weighted_rule(24, alpha);
    for (int p : {0, 2, 4, 10}) {
      // weights carry the e^{x^2} compensation, so the bare weight is w e^{-x^2}
      double got = 0.0;
      for (int i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes(i);
        got += rule.weights(i) * std::pow(x, p) * std::exp(-x * x);
      }
      const double expected = std::tgamma(0.5 * (alpha + p + 1.0));
      CHECK(got == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("potential sections against ladder oracles") {
  // x^2 as a custom sampled potential
  const PotentialSpec vx2 = PotentialSpec::custom([](double x) { return Complex(x * x, 0.0); });
  const OperatorMatrix M = potential_fock_matrix(vx2, 8, 64);
  for (int n = 0; n < 8; ++n) {
    CHECK(std::abs(M.entries(n, n) - Complex(n + 0.5, 0.0)) <= 1e-10);
    if (n + 2 < 8) {
      const double want = std::sqrt(double(n + 1) * double(n + 2)) / 2.0;
      CHECK(std::abs(M.entries(n, n + 2) - Complex(want, 0.0)) <= 1e-10);
    }
    if (n + 1 < 8) CHECK(std::abs(M.entries(n, n + 1)) <= 1e-12);
  }

  // V = 1 gives the identity through orthonormality
  const PotentialSpec one = PotentialSpec::custom([](double) { return Complex(1.0, 0.0); });
  const OperatorMatrix I = potential_fock_matrix(one, 8, 64);
  CHECK((I.entries - MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-12);

  // |x| decouples parity exactly
  const OperatorMatrix A = potential_fock_matrix(PotentialSpec::power_abs(1.0, 1.0), 6, 64);
  for (int m = 0; m < 6; ++m)
    for (int n = 0; n < 6; ++n)
      if ((m + n) % 2 == 1) CHECK(A.entries(m, n) == Complex(0.0, 0.0));
  CHECK(A.entries(0, 0).real() == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
  CHECK(A.entries(1, 1).real() == doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-14));

  CHECK_THROWS_AS(potential_fock_matrix(PotentialSpec::power_abs(1.0, 1.0), 8, 40), Error);

  // a kink sampled through the plain rule resolves at O(1/n) only, so the
  // node-count gate has to fire
  const PotentialSpec kink = PotentialSpec::custom([](double x) { return Complex(std::abs(x), 0.0); });
  CHECK_THROWS_AS(potential_fock_matrix(kink, 8, 64), Error);
}

TEST_CASE("phased potential keeps the symmetric structure") {
  const OperatorMatrix P = potential_fock_matrix(PotentialSpec::phased_power(1.0, 0.5), 10, 64);
  CHECK((P.entries - P.entries.transpose()).norm() == 0.0);
  // real part couples even pairs, imaginary part odd pairs
  CHECK(std::abs(P.entries(0, 1).real()) <= 1e-15);
  CHECK(std::abs(P.entries(0, 2).imag()) <= 1e-15);
  CHECK(std::abs(P.entries(0, 1).imag()) > 1e-4);
}

TEST_CASE("grid sections converge at the scheme order") {
  const PotentialSpec none = PotentialSpec::custom([](double) { return Complex(0.0, 0.0); });
  auto lowest_error = [&](int m, Scheme s) {
    const OperatorMatrix G = grid_matrix(0.0, none, {10.0, m, s});
    const linalg::EigenvalueSet ev = linalg::eigenvalues(G.entries);
    double worst = 0.0;
    for (int k = 0; k < 6; ++k)
      worst = std::max(worst, std::abs(ev.values[k] - Complex(2.0 * k + 1.0, 0.0)));
    return worst;
  };
  const double e2_coarse = lowest_error(300, Scheme::Central2);
  const double e2_fine = lowest_error(600, Scheme::Central2);
  CHECK(e2_coarse / e2_fine > 3.0);  // h^2
  CHECK(e2_coarse / e2_fine < 5.0);

  const double e4_coarse = lowest_error(300, Scheme::Central4);
  const double e4_fine = lowest_error(600, Scheme::Central4);
  CHECK(e4_coarse / e4_fine > 11.0);  // h^4
  CHECK(e4_fine < e2_fine);
}

TEST_CASE("constant potentials shift the grid spectrum exactly") {
  const PotentialSpec none = PotentialSpec::custom([](double) { return Complex(0.0, 0.0); });
  const PotentialSpec three = PotentialSpec::custom([](double) { return Complex(3.0, 0.0); });
  const OperatorMatrix A = grid_matrix(0.3, none, {8.0, 40, Scheme::Central2});
  const OperatorMatrix B = grid_matrix(0.3, three, {8.0, 40, Scheme::Central2});
  CHECK((B.entries - A.entries - 3.0 * MatrixXcd::Identity(40, 40)).norm() <= 1e-12);
}

TEST_CASE("Fock and grid sections agree at scale" * doctest::timeout(1200)) {
  // the full-size cross-method gate: N = 400 against L = 14, m = 2000
  const double theta = 0.3;
  const discretize::PotentialSpec V = discretize::PotentialSpec::power_abs(1.0, 1.0);
  const MatrixXcd F =
      fock_matrix({theta, 400}).entries + potential_fock_matrix(V, 400, 832).entries;
  const OperatorMatrix G = grid_matrix(theta, V, {14.0, 2000, Scheme::Central4});
  const linalg::EigenvalueSet ef = linalg::eigenvalues(F);
  const linalg::EigenvalueSet eg = linalg::eigenvalues(G.entries);
  for (int k = 0; k < 8; ++k) CHECK(std::abs(ef.values[k] - eg.values[k]) <= 1e-3);
}

TEST_CASE("Fock and grid sections agree on the low spectrum") {
  const double theta = 0.3;
  const PotentialSpec V = PotentialSpec::power_abs(1.0, 1.0);
  const MatrixXcd F =
      fock_matrix({theta, 120}).entries + potential_fock_matrix(V, 120, 2 * 120 + 32).entries;
  const OperatorMatrix G = grid_matrix(theta, V, {11.0, 700, Scheme::Central4});
  const linalg::EigenvalueSet ef = linalg::eigenvalues(F);
  const linalg::EigenvalueSet eg = linalg::eigenvalues(G.entries);
  for (int k = 0; k < 4; ++k) CHECK(std::abs(ef.values[k] - eg.values[k]) <= 1e-3);
}

TEST_CASE("rotated Hermite functions") {
  CHECK(psi_n(0.0, 0, 0.0).real() == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-14));
  CHECK(std::abs(psi_n(0.0, 1, 0.0)) == 0.0);

  // matches the classical functions on the line at theta = 0
  for (double x : {-2.3, -0.4, 0.9, 3.7}) {
    const VectorXd phi = hermite_functions(6, x);
    for (int n = 0; n < 6; ++n) CHECK(std::abs(psi_n(0.0, n, x) - phi(n)) <= 1e-13);
  }

  // discrete L^2 normalisation at a rotated angle
  const double theta = 0.5;
  const util::GaussLegendre gl = util::gauss_legendre(32);
  Complex norm = 0.0;  // J-symmetric pairing integrates psi^2 without conjugation
  double abs_norm = 0.0;
  const int panels = 30;
  const double L = 10.0;
  for (int p = 0; p < panels; ++p) {
    const double a = -L + 2.0 * L * p / panels;
    const double b = -L + 2.0 * L * (p + 1) / panels;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      const Complex v = psi_n(theta, 7, x);
      norm += 0.5 * (b - a) * gl.weights[i] * v * v;
      abs_norm += 0.5 * (b - a) * gl.weights[i] * std::norm(v);
    }
  }
  CHECK(std::abs(norm - 1.0) <= 1e-6);
  CHECK(abs_norm >= 1.0 - 1e-9);  // Cauchy-Schwarz floor for the plain L^2 mass

  // the theta = 0 functions integrate to one in plain L^2
  double classic = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = -L + 2.0 * L * p / panels;
    const double b = -L + 2.0 * L * (p + 1) / panels;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      classic += 0.5 * (b - a) * gl.weights[i] * std::norm(psi_n(0.0, 7, x));
    }
  }
  CHECK(classic == doctest::Approx(1.0).epsilon(1e-6));

  // stays finite across the guarded envelope
  CHECK(std::isfinite(std::abs(psi_n(1.2, 400, 40.0))));
  CHECK(std::isfinite(std::abs(psi_n(1.2, 400, -40.0))));
}

TEST_CASE("half width heuristic grows with the demand") {
  CHECK(suggested_half_width(8, 1.0, 1.0) > 6.0);
  CHECK(suggested_half_width(30, 1.0, 1.0) > suggested_half_width(8, 1.0, 1.0));
  CHECK(suggested_half_width(8, 4.0, 1.0) > suggested_half_width(8, 1.0, 1.0));
}
