// Command-line driver: region grids, Mehler norms and asymptotics, the
// diagonal models, the Dyson engine, spectra and pseudospectra, and the
// reproduce suites.  CSV goes to --out (default stdout) for grids/ladders,
// JSON for structured reports; timing and envelope notes go to stderr so the
// payload bytes depend only on the config and the artifact version.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nsho/diagmodel.hpp"
#include "nsho/discretize.hpp"
#include "nsho/dyson.hpp"
#include "nsho/linalg.hpp"
#include "nsho/mehler.hpp"
#include "nsho/regions.hpp"
#include "nsho/spectra.hpp"
#include "nsho/suite.hpp"
#include "nsho/util.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kPi = std::numbers::pi;

using nsho::Complex;
using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Output {
  std::string path;  // empty = stdout

  void write(const std::string& payload) const {
    if (path.empty()) {
      std::cout << payload;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw nsho::Error(nsho::ErrorCode::ConfigInvalid, "cannot open " + path);
    out << payload;
  }
};

void emit_json(const Output& out, const std::string& command, const json& config,
               const json& payload, const json& oracle_deltas = json::object()) {
  json envelope;
  envelope["artifact_version"] = kVersion;
  envelope["command"] = command;
  envelope["config"] = config;
  envelope["payload"] = payload;
  if (!oracle_deltas.empty()) envelope["oracle_deltas"] = oracle_deltas;
  out.write(envelope.dump(2) + "\n");
}

struct PotentialFlags {
  std::string kind = "abs";
  double a = 1.0;
  double b = 0.0;
  double alpha = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--potential", kind, "potential kind: none, abs, phased")
        ->check(CLI::IsMember({"none", "abs", "phased"}));
    cmd->add_option("--a", a, "potential scale a > 0");
    cmd->add_option("--alpha", alpha, "potential growth exponent in [0, 2)");
    cmd->add_option("--b", b, "potential offset b");
  }

  bool enabled() const { return kind != "none"; }

  nsho::discretize::PotentialSpec spec() const {
    if (kind == "phased") return nsho::discretize::PotentialSpec::phased_power(a, alpha, b);
    return nsho::discretize::PotentialSpec::power_abs(a, alpha, b);
  }

  json echo() const { return {{"kind", kind}, {"a", a}, {"alpha", alpha}, {"b", b}}; }
};

nsho::MatrixXcd build_fock(double theta, int n, const PotentialFlags& pot) {
  nsho::MatrixXcd H = nsho::discretize::fock_matrix({theta, n}).entries;
  if (pot.enabled())
    H += nsho::discretize::potential_fock_matrix(pot.spec(), n, 2 * n + 32).entries;
  return H;
}

// ---- subcommand bodies ------------------------------------------------------

int cmd_regions(const std::string& region, double theta, double sector_alpha, double sector_beta,
                double q, double shift, const std::string& method, double tolerance,
                std::array<double, 4> rect, int nx, int ny, const Output& out) {
  std::ostringstream csv;
  csv << "re,im,inside,margin\n";
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double re = rect[0] + (rect[1] - rect[0]) * ix / double(std::max(1, nx - 1));
      const double im = rect[2] + (rect[3] - rect[2]) * iy / double(std::max(1, ny - 1));
      const Complex z(re, im);
      nsho::regions::RegionVerdict v{};
      if (region == "sector") {
        v = nsho::regions::in_sector(z, {sector_alpha, sector_beta});
      } else if (region == "semimodule") {
        const auto m = method == "mehler" ? nsho::regions::SemiModuleMethod::MehlerReals
                                          : nsho::regions::SemiModuleMethod::ArgTanh;
        try {
          v = nsho::regions::in_semimodule({theta, z, tolerance}, m);
        } catch (const nsho::Error&) {
          v = {false, std::numeric_limits<double>::quiet_NaN(), false};  // pole
        }
      } else if (region == "numrange") {
        v = nsho::regions::in_numrange(z, theta, tolerance);
      } else {
        v = nsho::regions::in_Rq(z, q, theta, shift);
      }
      csv << format_double(re) << ',' << format_double(im) << ',' << (v.inside ? 1 : 0) << ','
          << format_double(v.margin) << "\n";
    }
  }
  out.write(csv.str());
  return 0;
}

int cmd_mehler_norm(double theta, double t, double omega, bool have_tau, Complex tau,
                    std::vector<double> sweep, bool have_window, double x0, double x1,
                    const Output& out) {
  std::ostringstream csv;
  csv << "theta,tau_re,tau_im,hs_norm_sq" << (have_window ? ",windowed_hs_norm_sq" : "")
      << ",oracle_delta\n";
  std::vector<Complex> taus;
  if (!sweep.empty())
    for (double tv : sweep) taus.push_back(tv * std::exp(Complex(0.0, omega)));
  else
    taus.push_back(have_tau ? tau : t * std::exp(Complex(0.0, omega)));

  for (const Complex tv : taus) {
    const double hs = nsho::mehler::hs_norm_sq(theta, tv);
    csv << format_double(theta) << ',' << format_double(tv.real()) << ','
        << format_double(tv.imag()) << ',' << format_double(hs);
    if (have_window) {
      const double tmag = std::abs(tv);
      const double om = std::arg(tv);
      csv << ',' << format_double(nsho::mehler::windowed_hs_norm_sq(theta, om, tmag, x0, x1));
    }
    // closed-form oracle echo where one exists (theta = 0, real tau)
    if (theta == 0.0 && tv.imag() == 0.0)
      csv << ',' << format_double(std::abs(hs - 1.0 / (2.0 * std::sinh(2.0 * tv.real()))));
    else
      csv << ",";
    csv << "\n";
  }
  out.write(csv.str());
  return 0;
}

int cmd_mehler_asymp(double theta, double omega, const std::string& quantity, const Output& out,
                     const json& config) {
  using nsho::mehler::AsympQuantity;
  AsympQuantity qty;
  if (quantity == "absw1") qty = AsympQuantity::AbsW1;
  else if (quantity == "r2") qty = AsympQuantity::R2;
  else if (quantity == "invr2sqmr1sq") qty = AsympQuantity::InvR2SqMinusR1Sq;
  else qty = AsympQuantity::HsNormSq;

  const nsho::mehler::AsympLaw law = nsho::mehler::asymp_law(theta, omega, qty);

  // fitted-slope echo from direct evaluation on t in [1e-3, 1e-1]
  std::vector<double> lx, ly;
  for (double t : nsho::util::log_spaced(1e-3, 1e-1, 17)) {
    const Complex tau = t * std::exp(Complex(0.0, omega));
    double value = 0.0;
    const auto co = nsho::mehler::coeffs(theta, tau);
    const auto rc = nsho::mehler::real_conditions(theta, tau);
    switch (qty) {
      case AsympQuantity::AbsW1: value = std::abs(co.w1); break;
      case AsympQuantity::R2: value = rc.r2; break;
      case AsympQuantity::InvR2SqMinusR1Sq:
        value = 1.0 / (rc.r2_minus_r1 * rc.r2_plus_r1);
        break;
      case AsympQuantity::HsNormSq: value = nsho::mehler::hs_norm_sq(theta, tau); break;
    }
    if (value > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(value));
    }
  }
  const double fitted =
      lx.size() >= 2 ? nsho::util::fitted_slope(lx, ly) : std::numeric_limits<double>::quiet_NaN();

  json payload;
  payload["exponent"] = law.exponent;
  payload["coefficient"] = law.coefficient;
  payload["regime"] = law.regime == nsho::mehler::AsympRegime::Boundary ? "boundary" : "interior";
  payload["coefficient_is_oracle_validated"] = law.coefficient_is_oracle_validated;
  json deltas;
  deltas["fitted_exponent"] = fitted;
  deltas["exponent_delta"] = std::abs(fitted - law.exponent);
  emit_json(out, "mehler-asymp", config, payload, deltas);
  return 0;
}

int cmd_diag(bool classify, bool trace_norm, bool perturb, bool counterexample, bool resolvent,
             double alpha, double q, double t, double b, double r, double y,
             const std::string& kind, std::vector<double> sweep, const Output& out) {
  std::ostringstream csv;
  const nsho::SchattenIndex qi(std::isinf(q) ? std::numeric_limits<double>::infinity() : q);
  if (classify) {
    csv << "alpha,q,classified\n"
        << format_double(alpha) << ',' << format_double(q) << ','
        << (nsho::diagmodel::classify_pcq(alpha, q) ? "true" : "false") << "\n";
  } else if (trace_norm) {
    csv << "t,trace_norm\n";
    if (sweep.empty()) sweep.push_back(t);
    for (double tv : sweep)
      csv << format_double(tv) << ',' << format_double(nsho::diagmodel::trace_norm_semigroup(tv))
          << "\n";
  } else if (perturb) {
    csv << "alpha,q,t,norm\n";
    if (sweep.empty()) sweep.push_back(t);
    for (double tv : sweep)
      csv << format_double(alpha) << ',' << format_double(q) << ',' << format_double(tv) << ','
          << format_double(nsho::diagmodel::perturbation_schatten_norm(alpha, qi, tv)) << "\n";
  } else if (counterexample) {
    const auto regime = nsho::diagmodel::counterexample_classify(b);
    const char* name = regime == nsho::diagmodel::CounterexampleRegime::Gibbs ? "gibbs"
                       : regime == nsho::diagmodel::CounterexampleRegime::UnitaryGroupOnly
                           ? "unitary-group-only"
                           : "not-generator";
    csv << "b,regime\n" << format_double(b) << ',' << name << "\n";
  } else if (resolvent) {
    const auto k = kind == "harmonic" ? nsho::diagmodel::Kind::HarmonicLike
                                      : nsho::diagmodel::Kind::CubicCounterexample;
    csv << "kind,r,y,resolvent_norm\n"
        << kind << ',' << format_double(r) << ',' << format_double(y) << ','
        << format_double(nsho::diagmodel::resolvent_norm(k, r, y)) << "\n";
  } else {
    throw nsho::Error(nsho::ErrorCode::ConfigInvalid,
                      "pick one of --classify-pcq, --trace-norm, --perturb-norm, "
                      "--counterexample, --resolvent-norm");
  }
  out.write(csv.str());
  return 0;
}

int cmd_dyson(double theta, int n, double t, double q, int terms, int panels, int points,
              const PotentialFlags& pot, bool with_residual, const Output& out,
              const json& config) {
  const nsho::MatrixXcd V = pot.enabled()
                                ? nsho::discretize::potential_fock_matrix(pot.spec(), n, 2 * n + 32)
                                      .entries
                                : nsho::MatrixXcd::Zero(n, n);
  const nsho::MatrixXcd T = nsho::discretize::fock_matrix({theta, n}).entries;
  nsho::dyson::SemigroupProvider provider = nsho::dyson::make_matrix_provider(T, 1.0);

  const std::vector<double> grid = nsho::util::log_spaced(0.02, 0.64, 12);
  const nsho::dyson::IntegrabilityReport rep =
      nsho::dyson::pcq_report(provider, V, nsho::SchattenIndex(q), grid);
  nsho::dyson::DysonOptions opt;
  opt.mesh.panels = panels;
  opt.mesh.points_per_panel = points;
  opt.mesh.singularity_exponent = std::clamp(rep.gamma_fit, 0.0, 0.94);

  const nsho::dyson::PerturbationSeries series =
      nsho::dyson::sum_series(provider, V, terms, t, nsho::SchattenIndex(q), opt);
  const nsho::MatrixXcd exact = nsho::linalg::matrix_exp(((-t) * (T + V)).eval());
  const double err = nsho::linalg::schatten_norm(series.sum - exact, nsho::SchattenIndex(q));

  json payload;
  payload["contraction"] = series.contraction;
  payload["tail_bound"] = series.tail_bound;
  payload["quad_error_estimate"] = series.quad_error_estimate;
  payload["term_norms_q"] = series.term_norms_q;
  payload["lemma_bound_violated"] = series.lemma_bound_violated;
  payload["gamma_fit"] = rep.gamma_fit;
  if (with_residual)
    payload["variation_residual"] =
        nsho::dyson::variation_residual(provider, V, t, nsho::SchattenIndex(q), opt);
  json deltas;
  deltas["series_vs_matrix_exp"] = err;
  deltas["allowance"] = series.tail_bound + 10.0 * series.quad_error_estimate;
  emit_json(out, "dyson", config, payload, deltas);
  return 0;
}

int cmd_spectrum(double theta, int count, int n, const std::string& method, double L, int m,
                 const std::string& scheme, const PotentialFlags& pot, const Output& out,
                 const json& config) {
  nsho::OperatorMatrix A, refined;
  if (method == "grid") {
    const auto sch = scheme == "central4" ? nsho::discretize::Scheme::Central4
                                          : nsho::discretize::Scheme::Central2;
    const auto V = pot.enabled() ? pot.spec()
                                 : nsho::discretize::PotentialSpec::custom(
                                       [](double) { return Complex(0.0, 0.0); });
    A = nsho::discretize::grid_matrix(theta, V, {L, m, sch});
    refined = nsho::discretize::grid_matrix(theta, V, {L, 2 * m, sch});
  } else {
    A = nsho::OperatorMatrix(build_fock(theta, n, pot), nsho::Provenance::Fock);
    refined = nsho::OperatorMatrix(build_fock(theta, 2 * n, pot), nsho::Provenance::Fock);
  }
  const nsho::spectra::SpectralReport rep =
      nsho::spectra::spectral_report(A, refined, theta, count);
  emit_json(out, "spectrum", config, json::parse(nsho::spectra::spectral_report_json(rep)));
  return 0;
}

int cmd_pseudospec(double theta, int n, const PotentialFlags& pot, std::array<double, 4> rect,
                   int nx, int ny, const Output& out) {
  const nsho::OperatorMatrix A(build_fock(theta, n, pot), nsho::Provenance::Fock);
  const nsho::spectra::PseudospecGrid grid =
      nsho::spectra::pseudospectrum(A, {rect[0], rect[1], rect[2], rect[3], nx, ny});
  std::ostringstream csv;
  csv << "re,im,sigma_min\n";
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const double re = rect[0] + (rect[1] - rect[0]) * ix / double(std::max(1, nx - 1));
      const double im = rect[2] + (rect[3] - rect[2]) * iy / double(std::max(1, ny - 1));
      csv << format_double(re) << ',' << format_double(im) << ','
          << format_double(grid.values(iy, ix)) << "\n";
    }
  out.write(csv.str());
  return 0;
}

int cmd_resolvent_ray(double theta, int n, const PotentialFlags& pot, double beta, double rho_min,
                      double rho_factor, int rho_count, const Output& out) {
  const nsho::OperatorMatrix A(build_fock(theta, n, pot), nsho::Provenance::Fock);
  const nsho::OperatorMatrix refined(build_fock(theta, 2 * n, pot), nsho::Provenance::Fock);
  std::vector<double> ladder;
  for (int k = 0; k < rho_count; ++k) ladder.push_back(rho_min * std::pow(rho_factor, k));
  const nsho::spectra::RayScanReport rep =
      nsho::spectra::resolvent_ray(A, refined, theta, beta, ladder);
  std::ostringstream csv;
  csv << "rho,norm_plus,norm_minus,delta\n";
  for (size_t i = 0; i < ladder.size(); ++i)
    csv << format_double(ladder[i]) << ',' << format_double(rep.plus.norms[i]) << ','
        << format_double(rep.minus.norms[i]) << ','
        << format_double(std::max(rep.delta_plus[i], rep.delta_minus[i])) << "\n";
  out.write(csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-selfadjoint oscillator semigroup toolbox"};
  app.set_config("--config", "", "flat key = value configuration file; flags override");
  app.require_subcommand(1);

  std::string out_path;
  long seed = 0;
  app.add_option("--out", out_path, "output path (default stdout)")->configurable(true);
  app.add_option("--seed", seed, "seed echoed into the config record")->configurable(true);

  // regions
  auto* regions_cmd = app.add_subcommand("regions", "membership grid over a rectangle");
  std::string region = "semimodule", method = "argtanh";
  double theta = 0.4, sector_alpha = kPi / 2, sector_beta = kPi / 2, rq = 3.0, shift = 0.0,
         tolerance = 1e-12;
  std::array<double, 4> rect{-1.0, 2.0, -1.5, 1.5};
  int nx = 41, ny = 41;
  regions_cmd->add_option("--region", region)->check(CLI::IsMember({"sector", "semimodule", "numrange", "rq"}));
  regions_cmd->add_option("--theta", theta);
  regions_cmd->add_option("--sector-alpha", sector_alpha);
  regions_cmd->add_option("--sector-beta", sector_beta);
  regions_cmd->add_option("--q", rq);
  regions_cmd->add_option("--shift", shift);
  regions_cmd->add_option("--method", method)->check(CLI::IsMember({"argtanh", "mehler"}));
  regions_cmd->add_option("--tolerance", tolerance);
  regions_cmd->add_option("--re-min", rect[0]);
  regions_cmd->add_option("--re-max", rect[1]);
  regions_cmd->add_option("--im-min", rect[2]);
  regions_cmd->add_option("--im-max", rect[3]);
  regions_cmd->add_option("--nx", nx);
  regions_cmd->add_option("--ny", ny);

  // mehler-norm
  auto* norm_cmd = app.add_subcommand("mehler-norm", "Hilbert-Schmidt norms of the kernel");
  double mn_theta = 0.0, mn_t = 0.5, mn_omega = 0.0, mn_tau_re = 0.0, mn_tau_im = 0.0;
  double t_min = 0.0, t_max = 0.0;
  int t_count = 0;
  double x0 = 0.0, x1 = 0.0;
  norm_cmd->add_option("--theta", mn_theta);
  norm_cmd->add_option("--t", mn_t);
  norm_cmd->add_option("--omega", mn_omega);
  auto* tau_re_opt = norm_cmd->add_option("--tau-re", mn_tau_re);
  norm_cmd->add_option("--tau-im", mn_tau_im);
  norm_cmd->add_option("--t-min", t_min);
  norm_cmd->add_option("--t-max", t_max);
  norm_cmd->add_option("--t-count", t_count);
  auto* x0_opt = norm_cmd->add_option("--x0", x0, "window start");
  norm_cmd->add_option("--x1", x1, "window end");

  // mehler-asymp
  auto* asymp_cmd = app.add_subcommand("mehler-asymp", "small-t asymptotic law");
  double ma_theta = 0.4, ma_omega = 0.0;
  std::string quantity = "hsnormsq";
  asymp_cmd->add_option("--theta", ma_theta);
  asymp_cmd->add_option("--omega", ma_omega);
  asymp_cmd->add_option("--quantity", quantity)
      ->check(CLI::IsMember({"absw1", "r2", "invr2sqmr1sq", "hsnormsq"}));

  // diag
  auto* diag_cmd = app.add_subcommand("diag", "diagonal toy models");
  bool classify = false, tracenorm = false, perturb = false, counterex = false, resolvent = false;
  double d_alpha = 0.0, d_q = 2.0, d_t = 1.0, d_b = 0.0, d_r = 0.0, d_y = 1e3;
  std::string d_kind = "cubic";
  diag_cmd->add_flag("--classify-pcq", classify);
  diag_cmd->add_flag("--trace-norm", tracenorm);
  diag_cmd->add_flag("--perturb-norm", perturb);
  diag_cmd->add_flag("--counterexample", counterex);
  diag_cmd->add_flag("--resolvent-norm", resolvent);
  diag_cmd->add_option("--alpha", d_alpha);
  diag_cmd->add_option("--q", d_q);
  diag_cmd->add_option("--t", d_t);
  diag_cmd->add_option("--b", d_b);
  diag_cmd->add_option("--r", d_r);
  diag_cmd->add_option("--y", d_y);
  diag_cmd->add_option("--kind", d_kind)->check(CLI::IsMember({"harmonic", "cubic"}));
  double dt_min = 0.0, dt_max = 0.0;
  int dt_count = 0;
  diag_cmd->add_option("--t-min", dt_min);
  diag_cmd->add_option("--t-max", dt_max);
  diag_cmd->add_option("--t-count", dt_count);

  // dyson
  auto* dyson_cmd = app.add_subcommand("dyson", "perturbation series report");
  double dy_theta = 0.4, dy_t = 0.05, dy_q = 6.0;
  int dy_n = 100, dy_K = 6, dy_panels = 10, dy_points = 6;
  bool dy_residual = false;
  PotentialFlags dy_pot;
  dyson_cmd->add_option("--theta", dy_theta);
  dyson_cmd->add_option("--N", dy_n);
  dyson_cmd->add_option("--t", dy_t);
  dyson_cmd->add_option("--q", dy_q);
  dyson_cmd->add_option("--K", dy_K);
  dyson_cmd->add_option("--panels", dy_panels);
  dyson_cmd->add_option("--points", dy_points);
  dyson_cmd->add_flag("--variation-residual", dy_residual);
  dy_pot.attach(dyson_cmd);

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "trusted eigenvalue report");
  double sp_theta = 0.4, sp_L = 14.0;
  int sp_count = 8, sp_n = 200, sp_m = 1000;
  std::string sp_method = "fock", sp_scheme = "central4";
  PotentialFlags sp_pot;
  spec_cmd->add_option("--theta", sp_theta);
  spec_cmd->add_option("--count", sp_count);
  spec_cmd->add_option("--N", sp_n);
  spec_cmd->add_option("--method", sp_method)->check(CLI::IsMember({"fock", "grid"}));
  spec_cmd->add_option("--L", sp_L);
  spec_cmd->add_option("--m", sp_m);
  spec_cmd->add_option("--scheme", sp_scheme)->check(CLI::IsMember({"central2", "central4"}));
  sp_pot.attach(spec_cmd);

  // pseudospec
  auto* ps_cmd = app.add_subcommand("pseudospec", "sigma_min grid");
  double ps_theta = 0.4;
  int ps_n = 120, ps_nx = 40, ps_ny = 30;
  std::array<double, 4> ps_rect{0.0, 40.0, -10.0, 25.0};
  PotentialFlags ps_pot;
  ps_pot.kind = "none";
  ps_cmd->add_option("--theta", ps_theta);
  ps_cmd->add_option("--N", ps_n);
  ps_cmd->add_option("--re-min", ps_rect[0]);
  ps_cmd->add_option("--re-max", ps_rect[1]);
  ps_cmd->add_option("--im-min", ps_rect[2]);
  ps_cmd->add_option("--im-max", ps_rect[3]);
  ps_cmd->add_option("--nx", ps_nx);
  ps_cmd->add_option("--ny", ps_ny);
  ps_pot.attach(ps_cmd);

  // resolvent-ray
  auto* ray_cmd = app.add_subcommand("resolvent-ray", "norms along the boundary rays");
  double ray_theta = 0.4, ray_beta = 0.0, ray_min = 4.0, ray_factor = 1.6;
  int ray_n = 150, ray_count = 8;
  PotentialFlags ray_pot;
  ray_cmd->add_option("--theta", ray_theta);
  ray_cmd->add_option("--N", ray_n);
  ray_cmd->add_option("--beta", ray_beta);
  ray_cmd->add_option("--rho-min", ray_min);
  ray_cmd->add_option("--rho-factor", ray_factor);
  ray_cmd->add_option("--rho-count", ray_count);
  ray_pot.attach(ray_cmd);

  // reproduce
  auto* rep_cmd = app.add_subcommand("reproduce", "run a stored experiment suite");
  std::string suite_name;
  rep_cmd->add_option("--suite", suite_name, "acceptance or smoke")->required();

  CLI11_PARSE(app, argc, argv);

  const auto t_start = std::chrono::steady_clock::now();
  const Output out{out_path};
  int rc = 0;
  try {
    if (*regions_cmd) {
      json cfg{{"region", region}, {"theta", theta}, {"seed", seed}};
      rc = cmd_regions(region, theta, sector_alpha, sector_beta, rq, shift, method, tolerance,
                       rect, nx, ny, out);
      std::cerr << "regions grid " << nx << "x" << ny << " written\n";
    } else if (*norm_cmd) {
      std::vector<double> sweep;
      if (t_count > 0) sweep = nsho::util::log_spaced(t_min, t_max, t_count);
      rc = cmd_mehler_norm(mn_theta, mn_t, mn_omega, tau_re_opt->count() > 0,
                           {mn_tau_re, mn_tau_im}, sweep, x0_opt->count() > 0, x0, x1, out);
    } else if (*asymp_cmd) {
      json cfg{{"theta", ma_theta}, {"omega", ma_omega}, {"quantity", quantity}, {"seed", seed}};
      rc = cmd_mehler_asymp(ma_theta, ma_omega, quantity, out, cfg);
    } else if (*diag_cmd) {
      std::vector<double> sweep;
      if (dt_count > 0) sweep = nsho::util::log_spaced(dt_min, dt_max, dt_count);
      rc = cmd_diag(classify, tracenorm, perturb, counterex, resolvent, d_alpha, d_q, d_t, d_b,
                    d_r, d_y, d_kind, sweep, out);
    } else if (*dyson_cmd) {
      json cfg{{"theta", dy_theta}, {"N", dy_n},         {"t", dy_t},
               {"q", dy_q},         {"K", dy_K},         {"panels", dy_panels},
               {"points", dy_points}, {"potential", dy_pot.echo()}, {"seed", seed}};
      rc = cmd_dyson(dy_theta, dy_n, dy_t, dy_q, dy_K, dy_panels, dy_points, dy_pot, dy_residual,
                     out, cfg);
    } else if (*spec_cmd) {
      json cfg{{"theta", sp_theta},   {"count", sp_count},   {"N", sp_n},
               {"method", sp_method}, {"L", sp_L},           {"m", sp_m},
               {"scheme", sp_scheme}, {"potential", sp_pot.echo()}, {"seed", seed}};
      rc = cmd_spectrum(sp_theta, sp_count, sp_n, sp_method, sp_L, sp_m, sp_scheme, sp_pot, out,
                        cfg);
    } else if (*ps_cmd) {
      rc = cmd_pseudospec(ps_theta, ps_n, ps_pot, ps_rect, ps_nx, ps_ny, out);
    } else if (*ray_cmd) {
      rc = cmd_resolvent_ray(ray_theta, ray_n, ray_pot, ray_beta, ray_min, ray_factor, ray_count,
                             out);
    } else if (*rep_cmd) {
      std::vector<nsho::suite::CriterionResult> results;
      if (suite_name == "acceptance")
        results = nsho::suite::run_acceptance(std::cout);
      else if (suite_name == "smoke")
        results = nsho::suite::run_smoke(std::cout);
      else
        throw nsho::Error(nsho::ErrorCode::ConfigInvalid, "unknown suite '" + suite_name + "'");
      if (!nsho::suite::all_passed(results)) {
        std::ostringstream failed;
        for (const auto& r : results)
          if (!r.passed) failed << " " << r.id;
        std::cerr << "failed criteria:" << failed.str() << "\n";
        rc = 1;
      }
    }
  } catch (const nsho::Error& e) {
    json err{{"error", nsho::error_code_name(e.code())}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err{{"error", "Internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  std::cerr << "wall time " << wall << " s\n";
  return rc;
}
