#include "nsho/suite.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "nsho/diagmodel.hpp"
#include "nsho/discretize.hpp"
#include "nsho/dyson.hpp"
#include "nsho/linalg.hpp"
#include "nsho/mehler.hpp"
#include "nsho/regions.hpp"
#include "nsho/spectra.hpp"
#include "nsho/util.hpp"

namespace nsho::suite {

namespace {

constexpr double kPi = std::numbers::pi;

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Runner = std::function<void(Check&)>;

CriterionResult run_one(std::ostream& log, int id, const std::string& name, double budget_s,
                        const Runner& body) {
  const double t0 = now_seconds();
  Check check;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail << "[exception: " << e.what() << "] ";
  }
  const double elapsed = now_seconds() - t0;
  if (elapsed > budget_s) {
    check.ok = false;
    check.detail << "[over budget: " << elapsed << " s > " << budget_s << " s] ";
  }
  CriterionResult res{id, name, check.ok, elapsed, check.detail.str()};
  log << "criterion " << id << " [" << (res.passed ? "PASS" : "FAIL") << "] " << name;
  if (!res.detail.empty()) log << " -- " << res.detail;
  log << " (" << elapsed << " s)\n" << std::flush;
  return res;
}

// ---- oracles ---------------------------------------------------------------

// 2-D quadrature of int int |M_theta(tau,x,y)|^2 dy dx over a box chosen from
// the kernel's Gaussian decay, panels doubled until the value settles.
double hs_norm_sq_quadrature(double theta, Complex tau, double rel_tol) {
  const mehler::RealConditions rc = mehler::real_conditions(theta, tau);
  const double cx = 2.0 * rc.r2_minus_r1 * rc.r2_plus_r1 / rc.r2;
  const double cy = 2.0 * rc.r2;
  const double xmax = std::sqrt(42.0 / cx);
  const double ywid = std::sqrt(42.0 / cy);
  const mehler::MehlerCoeffs co = mehler::coeffs(theta, tau);
  const double tilt = co.r1 / rc.r2;

  const util::GaussLegendre gl = util::gauss_legendre(16);
  auto integrate = [&](int panels) {
    double total = 0.0;
    for (int px = 0; px < panels; ++px) {
      const double ax = -xmax + 2.0 * xmax * px / panels;
      const double bx = -xmax + 2.0 * xmax * (px + 1) / panels;
      for (int i = 0; i < 16; ++i) {
        const double x = 0.5 * (ax + bx) + 0.5 * (bx - ax) * gl.nodes[i];
        const double wx = 0.5 * (bx - ax) * gl.weights[i];
        const double mu = tilt * x;
        double inner = 0.0;
        for (int py = 0; py < panels; ++py) {
          const double ay = mu - ywid + 2.0 * ywid * py / panels;
          const double by = mu - ywid + 2.0 * ywid * (py + 1) / panels;
          for (int j = 0; j < 16; ++j) {
            const double y = 0.5 * (ay + by) + 0.5 * (by - ay) * gl.nodes[j];
            const double wy = 0.5 * (by - ay) * gl.weights[j];
            const double m = std::abs(mehler::kernel(theta, tau, x, y));
            inner += wy * m * m;
          }
        }
        total += wx * inner;
      }
    }
    return total;
  };
  double prev = integrate(4);
  for (int panels = 8; panels <= 64; panels *= 2) {
    const double cur = integrate(panels);
    if (std::abs(cur - prev) <= 0.3 * rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

double brute_force_diag_norm(double alpha, double q, double t) {
  const double s = alpha * q, rate = t * q;
  long n_max = std::lround(std::ceil((60.0 + std::max(0.0, s) * 40.0) / rate)) + 10;
  double sum = 0.0;
  for (long n = 1; n <= n_max; ++n)
    sum += std::pow(double(n), s) * std::exp(-rate * double(n));
  return std::pow(sum, 1.0 / q);
}

struct FockSystem {
  MatrixXcd H;  // oscillator + potential
  MatrixXcd V;
};

FockSystem fock_system(double theta, int n_basis, const discretize::PotentialSpec& V) {
  FockSystem sys;
  sys.V = discretize::potential_fock_matrix(V, n_basis, 2 * n_basis + 32).entries;
  sys.H = discretize::fock_matrix({theta, n_basis}).entries + sys.V;
  return sys;
}

// ---- smoke-oracle table -----------------------------------------------------

nlohmann::json embedded_smoke_oracles() {
  // one row per scalar check: [name, value, tolerance]
  return nlohmann::json::parse(R"([
    ["mehler_w1_theta0_t05",        0.42545906411966077, 1e-13],
    ["mehler_w2_theta0_t05",        0.65651764274966565, 1e-13],
    ["mehler_hs_theta0_t10",        0.13786028238589160, 1e-13],
    ["mehler_kernel00_theta0_t05",  0.36800519870756081, 1e-13],
    ["diag_trace_norm_t1",          0.58197670686932642, 1e-13],
    ["diag_trace_norm_t01",         9.50833194477504907, 1e-12],
    ["diag_pert_a0_q2_t1",          0.39562310694607520, 1e-13],
    ["diag_resolvent_cubic_y1e3",   0.1,                 1e-13],
    ["diag_resolvent_cubic_y1e6",   0.01,                1e-14],
    ["fock_absx_00",                0.56418958354775629, 1e-12],
    ["psi0_at_0",                   0.75112554446494248, 1e-13]
  ])");
}

nlohmann::json load_smoke_oracles(std::string* source) {
  const char* env = std::getenv("NSHO_DATA_DIR");
  const std::vector<std::string> candidates = {
      env ? std::string(env) + "/smoke_oracles.json" : "",
      "data/smoke_oracles.json",
      "../data/smoke_oracles.json",
  };
  for (const std::string& path : candidates) {
    if (path.empty()) continue;
    std::ifstream in(path);
    if (in) {
      *source = path;
      nlohmann::json j;
      in >> j;
      return j;
    }
  }
  *source = "embedded";
  return embedded_smoke_oracles();
}

// ---- acceptance criteria ----------------------------------------------------

void criterion_mehler_hs_identity(Check& c) {
  std::mt19937_64 rng(20260810);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int accepted = 0;
  double worst = 0.0;
  while (accepted < 20) {
    const double theta = 0.1 + 1.1 * u01(rng);
    const double t = 0.15 + 0.75 * u01(rng);
    const double omega = (kPi / 2.0 - 0.02) * (2.0 * u01(rng) - 1.0);
    const Complex tau = t * std::exp(Complex(0.0, omega));
    regions::SemiModuleQuery query(theta, tau, 1e-12);
    if (!regions::in_semimodule(query, regions::SemiModuleMethod::ArgTanh).inside) continue;
    if (regions::in_semimodule(query, regions::SemiModuleMethod::MehlerReals).margin < 1e-3)
      continue;
    ++accepted;
    const double closed = mehler::hs_norm_sq(theta, tau);
    const double quad = hs_norm_sq_quadrature(theta, tau, 1e-7);
    worst = std::max(worst, std::abs(closed - quad) / quad);
  }
  c.require(worst <= 1e-6, "closed form vs 2-D quadrature relative error " + std::to_string(worst));
  c.detail << "20 samples, worst rel dev " << worst
           << "; quadrature confirms the pi-free norm constant";
}

void criterion_theta0_closed_form(Check& c) {
  for (double t : {0.1, 0.5, 1.0}) {
    const double hs = mehler::hs_norm_sq(0.0, {t, 0.0});
    const double closed = 1.0 / (2.0 * std::sinh(2.0 * t));
    double eigsum = 0.0;
    for (long n = 10000; n >= 0; --n) eigsum += std::exp(-2.0 * (2.0 * n + 1.0) * t);
    c.require(std::abs(hs - closed) <= 1e-12, "closed form at t=" + std::to_string(t));
    c.require(std::abs(hs - eigsum) <= 1e-12, "eigen-sum at t=" + std::to_string(t));
  }
  c.detail << "1/(2 sinh 2t) and the eigen-sum both match to 1e-12";
}

void criterion_semigroup_exponents(Check& c) {
  const double theta = 0.4;
  const std::vector<double> ts = util::log_spaced(1e-3, 1e-1, 25);
  for (const auto& [omega, want] :
       std::vector<std::pair<double, double>>{{0.0, -1.0}, {kPi / 2.0 - 0.4, -2.0}}) {
    std::vector<double> lx, ly;
    for (double t : ts) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(mehler::hs_norm_sq(theta, t * std::exp(Complex(0.0, omega)))));
    }
    const double slope = util::fitted_slope(lx, ly);
    c.require(std::abs(slope - want) <= 0.05,
              "slope " + std::to_string(slope) + " at omega=" + std::to_string(omega));
    c.detail << "omega=" << omega << ": slope " << slope << "; ";

    // i pi shifts, exactly: snap Im(tau) to the ulp(pi) lattice so that
    // adding k*pi is exact in floating point, then demand bitwise equality
    for (int k : {1, 2}) {
      for (double t : {ts.front(), ts[12], ts.back()}) {
        const Complex ray = t * std::exp(Complex(0.0, omega));
        const double ulp_pi = 0x1p-49;  // coarse enough that im + 2 pi stays exact
        const double im = std::round(ray.imag() / ulp_pi) * ulp_pi;
        const Complex tau(ray.real(), im);
        const Complex shifted(ray.real(), im + k * kPi);
        c.require(shifted.imag() - k * kPi == im, "snapped shift is exact");
        c.require(mehler::hs_norm_sq(theta, tau) == mehler::hs_norm_sq(theta, shifted),
                  "bitwise i*pi invariance at t=" + std::to_string(t));
      }
    }
  }
  c.detail << "i*pi shifts bitwise invariant";
}

void criterion_diagonal_model(Check& c) {
  const std::vector<double> alphas = {0.0, 0.2, 0.4, 0.6, 0.75};
  const std::vector<double> qs = {1.0, 1.5, 2.0, 4.0, 6.0};
  double worst_match = 0.0, worst_slope_dev = 0.0;
  for (double alpha : alphas) {
    for (double q : qs) {
      const double lib = diagmodel::perturbation_schatten_norm(alpha, SchattenIndex(q), 0.7);
      const double brute = brute_force_diag_norm(alpha, q, 0.7);
      worst_match = std::max(worst_match, std::abs(lib - brute) / brute);

      if (alpha * q > -1.0) {
        const std::vector<double> ts = util::log_spaced(1e-4, 1e-2, 9);
        std::vector<double> lx, ly;
        for (double t : ts) {
          lx.push_back(std::log(t));
          ly.push_back(std::log(diagmodel::perturbation_schatten_norm(alpha, SchattenIndex(q), t)));
        }
        const double slope = util::fitted_slope(lx, ly);
        const double want = -(q * alpha + 1.0) / q;
        worst_slope_dev = std::max(worst_slope_dev, std::abs(slope - want));
      }
    }
    const double thresh = 1.0 / (1.0 - alpha);
    c.require(!diagmodel::classify_pcq(alpha, thresh), "threshold q itself excluded");
    c.require(diagmodel::classify_pcq(alpha, thresh + 1e-9), "just above threshold included");
    if (thresh - 1e-9 >= 1.0)
      c.require(!diagmodel::classify_pcq(alpha, thresh - 1e-9), "just below threshold excluded");
  }
  c.require(worst_match <= 1e-12, "brute-force match " + std::to_string(worst_match));
  c.require(worst_slope_dev <= 0.02, "slope deviation " + std::to_string(worst_slope_dev));
  c.require(diagmodel::counterexample_classify(0.0) == diagmodel::CounterexampleRegime::Gibbs,
            "b=0 regime");
  c.require(diagmodel::counterexample_classify(-1.0) ==
                diagmodel::CounterexampleRegime::UnitaryGroupOnly,
            "b=-1 regime");
  c.require(diagmodel::counterexample_classify(-2.0) ==
                diagmodel::CounterexampleRegime::NotGenerator,
            "b=-2 regime");
  c.detail << "5x5 grid: worst brute-force dev " << worst_match << ", worst slope dev "
           << worst_slope_dev;
}

void criterion_resolvent_decay(Check& c) {
  using diagmodel::Kind;
  const double v3 = diagmodel::resolvent_norm(Kind::CubicCounterexample, 0.0, 1e3);
  const double v6 = diagmodel::resolvent_norm(Kind::CubicCounterexample, 0.0, 1e6);
  c.require(std::abs(v3 - 0.1) <= 1e-13, "value at y=1e3");
  c.require(std::abs(v6 - 0.01) <= 1e-14, "value at y=1e6");
  std::vector<double> lx, ly;
  for (double m : util::log_spaced(10.0, 1000.0, 13)) {
    const double mm = std::round(m);
    const double y = mm * mm * mm;
    lx.push_back(std::log(y));
    ly.push_back(std::log(diagmodel::resolvent_norm(Kind::CubicCounterexample, 0.0, y)));
  }
  const double slope = util::fitted_slope(lx, ly);
  c.require(std::abs(slope + 1.0 / 3.0) <= 0.03, "slope " + std::to_string(slope));
  c.detail << "values 0.1 / 0.01 exact, slope " << slope;
}

void criterion_dyson_engine(Check& c) {
  // commuting diagonal oracle: W_k(t) = t^k A^k e^{-Tt} / k!
  {
    const int n = 12;
    MatrixXcd T = MatrixXcd::Zero(n, n), A = MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      T(i, i) = double(i + 1);
      A(i, i) = 0.3 * std::sqrt(double(i + 1));
    }
    dyson::SemigroupProvider provider = dyson::make_matrix_provider(T, 1.0);
    dyson::DysonOptions opt;
    const dyson::PerturbationSeries series =
        dyson::sum_series(provider, A, 10, 0.4, SchattenIndex(2.0), opt);
    const MatrixXcd exact = linalg::matrix_exp((-0.4 * (T + A)).eval());
    const double rel = (series.sum - exact).norm() / exact.norm();
    c.require(rel <= 1e-8, "commuting oracle error " + std::to_string(rel));
    c.detail << "commuting rel err " << rel << "; ";
  }
  // Fock section with the |x| potential
  {
    const double theta = 0.4, t = 0.05;
    const SchattenIndex q(6.0);
    const FockSystem sys = fock_system(theta, 200, discretize::PotentialSpec::power_abs(1.0, 1.0));
    const MatrixXcd T = sys.H - sys.V;
    dyson::SemigroupProvider provider = dyson::make_matrix_provider(T, 1.0);

    const std::vector<double> grid = util::log_spaced(0.02, 0.64, 12);
    const dyson::IntegrabilityReport rep = dyson::pcq_report(provider, sys.V, q, grid);
    dyson::DysonOptions opt;
    opt.mesh.singularity_exponent = std::min(rep.gamma_fit, 0.94);

    const dyson::PerturbationSeries series = dyson::sum_series(provider, sys.V, 8, t, q, opt);
    const MatrixXcd exact = linalg::matrix_exp((-t * sys.H).eval());
    const double err = linalg::schatten_norm(series.sum - exact, q);
    const double allowance = series.tail_bound + 10.0 * series.quad_error_estimate;
    c.require(err <= allowance, "series error " + std::to_string(err) + " > tail+10*quad " +
                                    std::to_string(allowance));
    c.require(!series.lemma_bound_violated, "geometric term bound violated");
    c.detail << "Fock: contraction " << series.contraction << ", err " << err << " <= "
             << allowance;
  }
}

void criterion_discretization(Check& c) {
  // theta = 0 is diagonal with the odd integers, exactly
  {
    const OperatorMatrix H = discretize::fock_matrix({0.0, 40});
    bool exact = true;
    for (int i = 0; i < 40; ++i)
      for (int j = 0; j < 40; ++j)
        if (H.entries(i, j) != Complex(i == j ? 2.0 * i + 1.0 : 0.0, 0.0)) exact = false;
    c.require(exact, "theta=0 section not exactly diagonal");
  }
  // theta = 0.3, V = 0: first 8 eigenvalues of the N=400 section
  {
    const OperatorMatrix H = discretize::fock_matrix({0.3, 400});
    const linalg::EigenvalueSet ev = linalg::eigenvalues(H.entries);
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) worst = std::max(worst, std::abs(ev.values[k] - Complex(2.0 * k + 1.0, 0.0)));
    c.require(worst <= 1e-6, "V=0 spectrum deviation " + std::to_string(worst));
    c.detail << "V=0 worst dev " << worst << "; ";
  }
  // Fock vs grid for theta = 0.3, V = |x|; m chosen to fit the runtime budget
  // here, the m = 2000 variant runs in the unit suite
  {
    const FockSystem sys = fock_system(0.3, 400, discretize::PotentialSpec::power_abs(1.0, 1.0));
    const linalg::EigenvalueSet fock = linalg::eigenvalues(sys.H);
    const OperatorMatrix G =
        discretize::grid_matrix(0.3, discretize::PotentialSpec::power_abs(1.0, 1.0),
                                {14.0, 1400, discretize::Scheme::Central4});
    const linalg::EigenvalueSet grid = linalg::eigenvalues(G.entries);
    double worst = 0.0;
    for (int k = 0; k < 8; ++k) worst = std::max(worst, std::abs(fock.values[k] - grid.values[k]));
    c.require(worst <= 1e-3, "Fock/grid deviation " + std::to_string(worst));
    c.detail << "Fock-vs-grid worst dev " << worst;
  }
}

void criterion_eigenvalue_asymptotics(Check& c) {
  const discretize::PotentialSpec V = discretize::PotentialSpec::power_abs(1.0, 1.0);
  const FockSystem coarse = fock_system(0.4, 400, V);
  const FockSystem fine = fock_system(0.4, 800, V);
  const spectra::SpectralReport rep = spectra::spectral_report(
      {coarse.H, Provenance::Fock}, {fine.H, Provenance::Fock}, 0.4, 30);
  c.require(rep.K_alpha > 0.0, "K_alpha positive");
  c.require(rep.K_beta > 0.0, "K_beta positive");
  c.require(rep.alpha_growth_exponent >= 1.0 - 0.05,
            "alpha exponent " + std::to_string(rep.alpha_growth_exponent));
  c.require(rep.beta_plus_growth_exponent >= 0.5 - 0.05,
            "beta+ exponent " + std::to_string(rep.beta_plus_growth_exponent));
  c.require(rep.beta_minus_growth_exponent >= 0.5 - 0.05,
            "beta- exponent " + std::to_string(rep.beta_minus_growth_exponent));
  c.detail << "K_alpha " << rep.K_alpha << ", K_beta " << rep.K_beta << ", exponents "
           << rep.alpha_growth_exponent << " / " << rep.beta_plus_growth_exponent << " / "
           << rep.beta_minus_growth_exponent;
}

void criterion_resolvent_rays(Check& c) {
  const discretize::PotentialSpec V = discretize::PotentialSpec::power_abs(1.0, 1.0);
  const FockSystem coarse = fock_system(0.4, 200, V);
  const FockSystem fine = fock_system(0.4, 400, V);
  std::vector<double> ladder;
  for (int k = 0; k < 8; ++k) ladder.push_back(4.0 * std::pow(1.6, k));
  for (double beta : {-1.0, 0.0, 1.0}) {
    const spectra::RayScanReport rep =
        spectra::resolvent_ray({coarse.H, Provenance::Fock}, {fine.H, Provenance::Fock}, 0.4,
                               beta, ladder);
    c.require(rep.trusted_length == int(ladder.size()),
              "full ladder trusted at beta=" + std::to_string(beta));
    c.require(rep.strictly_decreasing_plus, "plus ray decreasing at beta=" + std::to_string(beta));
    c.require(rep.strictly_decreasing_minus,
              "minus ray decreasing at beta=" + std::to_string(beta));
    double worst_delta = 0.0;
    for (size_t i = 0; i < ladder.size(); ++i)
      worst_delta = std::max({worst_delta, rep.delta_plus[i], rep.delta_minus[i]});
    c.detail << "beta=" << beta << " worst delta " << worst_delta << "; ";
  }
}

void criterion_pcq_thresholds(Check& c) {
  const discretize::PotentialSpec V = discretize::PotentialSpec::power_abs(1.0, 1.0);
  const std::vector<double> grid = util::log_spaced(0.02, 0.64, 12);
  double gamma6[2], gamma15[2];
  int idx = 0;
  for (int n : {200, 400}) {
    const FockSystem sys = fock_system(0.4, n, V);
    const MatrixXcd T = sys.H - sys.V;
    dyson::SemigroupProvider provider = dyson::make_matrix_provider(T, 1.0);
    const dyson::IntegrabilityReport r6 = dyson::pcq_report(provider, sys.V, SchattenIndex(6.0), grid);
    const dyson::IntegrabilityReport r15 =
        dyson::pcq_report(provider, sys.V, SchattenIndex(1.5), grid);
    c.require(r6.classified_pcq && !r6.indeterminate,
              "q=6 integrable at N=" + std::to_string(n));
    c.require(!r15.classified_pcq && !r15.indeterminate,
              "q=1.5 not integrable at N=" + std::to_string(n));
    gamma6[idx] = r6.gamma_fit;
    gamma15[idx] = r15.gamma_fit;
    ++idx;
  }
  c.require(std::abs(gamma6[0] - gamma6[1]) < 0.05, "q=6 gamma fits consistent across N");
  c.require(std::abs(gamma15[0] - gamma15[1]) < 0.05, "q=1.5 gamma fits consistent across N");
  c.detail << "gamma(q=6) " << gamma6[0] << "/" << gamma6[1] << ", gamma(q=1.5) " << gamma15[0]
           << "/" << gamma15[1];
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream& log) {
  std::vector<CriterionResult> results;
  results.push_back(run_one(log, 1, "Mehler HS identity vs 2-D quadrature", 120.0,
                            criterion_mehler_hs_identity));
  results.push_back(
      run_one(log, 2, "theta=0 closed form and eigen-sum", 1.0, criterion_theta0_closed_form));
  results.push_back(run_one(log, 3, "semigroup norm exponents and i*pi shifts", 5.0,
                            criterion_semigroup_exponents));
  results.push_back(
      run_one(log, 4, "diagonal model norms, slopes, thresholds", 10.0, criterion_diagonal_model));
  results.push_back(
      run_one(log, 5, "cubic-model resolvent decay", 1.0, criterion_resolvent_decay));
  results.push_back(run_one(log, 6, "Dyson-Phillips engine", 300.0, criterion_dyson_engine));
  results.push_back(
      run_one(log, 7, "discretization ground truth", 240.0, criterion_discretization));
  results.push_back(
      run_one(log, 8, "eigenvalue asymptotics", 300.0, criterion_eigenvalue_asymptotics));
  results.push_back(run_one(log, 9, "resolvent rays", 300.0, criterion_resolvent_rays));
  results.push_back(
      run_one(log, 10, "class-PC_r integrability thresholds", 300.0, criterion_pcq_thresholds));
  return results;
}

std::vector<CriterionResult> run_smoke(std::ostream& log) {
  std::vector<CriterionResult> results;

  std::string source;
  const nlohmann::json oracles = load_smoke_oracles(&source);
  log << "smoke oracle table: " << source << "\n";

  results.push_back(run_one(log, 1, "stored oracle values", 30.0, [&](Check& c) {
    auto value_of = [&](const std::string& name) -> double {
      if (name == "mehler_w1_theta0_t05") return mehler::coeffs(0.0, {0.5, 0.0}).w1.real();
      if (name == "mehler_w2_theta0_t05") return mehler::coeffs(0.0, {0.5, 0.0}).w2.real();
      if (name == "mehler_hs_theta0_t10") return mehler::hs_norm_sq(0.0, {1.0, 0.0});
      if (name == "mehler_kernel00_theta0_t05")
        return mehler::kernel(0.0, {0.5, 0.0}, 0.0, 0.0).real();
      if (name == "diag_trace_norm_t1") return diagmodel::trace_norm_semigroup(1.0);
      if (name == "diag_trace_norm_t01") return diagmodel::trace_norm_semigroup(0.1);
      if (name == "diag_pert_a0_q2_t1")
        return diagmodel::perturbation_schatten_norm(0.0, SchattenIndex(2.0), 1.0);
      if (name == "diag_resolvent_cubic_y1e3")
        return diagmodel::resolvent_norm(diagmodel::Kind::CubicCounterexample, 0.0, 1e3);
      if (name == "diag_resolvent_cubic_y1e6")
        return diagmodel::resolvent_norm(diagmodel::Kind::CubicCounterexample, 0.0, 1e6);
      if (name == "fock_absx_00")
        return discretize::potential_fock_matrix(discretize::PotentialSpec::power_abs(1.0, 1.0), 6,
                                                 64)
            .entries(0, 0)
            .real();
      if (name == "psi0_at_0") return discretize::psi_n(0.0, 0, 0.0).real();
      throw Error(ErrorCode::ConfigInvalid, "unknown oracle row " + name);
    };
    for (const auto& row : oracles) {
      const std::string name = row[0];
      const double expected = row[1], tol = row[2];
      const double got = value_of(name);
      c.require(std::abs(got - expected) <= tol, name + " = " + std::to_string(got));
    }
    c.detail << oracles.size() << " stored values reproduced";
  }));

  results.push_back(run_one(log, 2, "theta=0 closed form", 1.0, criterion_theta0_closed_form));

  results.push_back(run_one(log, 3, "region method agreement (1e3 samples)", 10.0, [](Check& c) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int checked = 0, agreed = 0;
    for (int i = 0; i < 1000; ++i) {
      const double theta = -1.4 + 2.8 * u01(rng);
      const Complex tau(-0.5 + 2.0 * u01(rng), -2.0 + 4.0 * u01(rng));
      regions::SemiModuleQuery query(theta, tau, 1e-9);
      try {
        const auto a = regions::in_semimodule(query, regions::SemiModuleMethod::ArgTanh);
        const auto b = regions::in_semimodule(query, regions::SemiModuleMethod::MehlerReals);
        if (std::abs(a.margin) <= 10.0 * query.tolerance ||
            std::abs(b.margin) <= 10.0 * query.tolerance)
          continue;
        ++checked;
        if (a.inside == b.inside) ++agreed;
      } catch (const Error&) {
        continue;  // pole hit by the sampler
      }
    }
    c.require(checked > 500, "enough interior samples");
    c.require(agreed == checked, "methods disagreed on " + std::to_string(checked - agreed));
    c.detail << agreed << "/" << checked << " verdicts agree";
  }));

  results.push_back(run_one(log, 4, "mehler quadrature identity (2 samples)", 30.0, [](Check& c) {
    for (const auto& [theta, tau] :
         std::vector<std::pair<double, Complex>>{{0.6, Complex(0.3, 0.1)},
                                                 {0.3, 0.25 * std::exp(Complex(0.0, 1.1))}}) {
      const double closed = mehler::hs_norm_sq(theta, tau);
      const double quad = hs_norm_sq_quadrature(theta, tau, 1e-7);
      c.require(std::abs(closed - quad) <= 1e-6 * quad, "sample deviates");
    }
    c.detail << "closed form matches quadrature";
  }));

  results.push_back(run_one(log, 5, "small Fock sections", 30.0, [](Check& c) {
    const OperatorMatrix H0 = discretize::fock_matrix({0.0, 8});
    c.require(H0.entries.isDiagonal(0.0), "theta=0 diagonal");
    const OperatorMatrix H = discretize::fock_matrix({0.3, 60});
    const linalg::EigenvalueSet ev = linalg::eigenvalues(H.entries);
    double worst = 0.0;
    for (int k = 0; k < 4; ++k)
      worst = std::max(worst, std::abs(ev.values[k] - Complex(2.0 * k + 1.0, 0.0)));
    c.require(worst <= 1e-6, "low eigenvalues drifted " + std::to_string(worst));
    c.detail << "V=0 spectrum ok to " << worst;
  }));

  results.push_back(run_one(log, 6, "commuting Dyson oracle", 30.0, [](Check& c) {
    const int n = 8;
    MatrixXcd T = MatrixXcd::Zero(n, n), A = MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      T(i, i) = double(i + 1);
      A(i, i) = 0.25 * std::sqrt(double(i + 1));
    }
    dyson::SemigroupProvider provider = dyson::make_matrix_provider(T, 1.0);
    const dyson::PerturbationSeries series =
        dyson::sum_series(provider, A, 6, 0.4, SchattenIndex(2.0), {});
    const MatrixXcd exact = linalg::matrix_exp((-0.4 * (T + A)).eval());
    const double rel = (series.sum - exact).norm() / exact.norm();
    c.require(rel <= 1e-8, "series error " + std::to_string(rel));
    c.detail << "rel err " << rel;
  }));

  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace nsho::suite
