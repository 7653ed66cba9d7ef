// Command-line front end: density/solve/simulate/check-identities/clt.
// Every command echoes its resolved configuration next to its outputs and
// derives all randomness from an explicit seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pinvspec/clt.hpp"
#include "pinvspec/config.hpp"
#include "pinvspec/ensemble.hpp"
#include "pinvspec/io.hpp"
#include "pinvspec/monte_carlo.hpp"
#include "pinvspec/mp_solver.hpp"
#include "pinvspec/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pinvspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

struct GlobalArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<int> nodes;
};

Config resolve_config(const GlobalArgs& g) {
  Config cfg;
  if (!g.config_path.empty()) cfg = Config::from_file(g.config_path);
  if (g.seed) cfg.set_u64("seed", *g.seed);
  if (g.threads) cfg.set_u64("threads", *g.threads);
  if (g.nodes) cfg.set_u64("nodes", static_cast<std::uint64_t>(*g.nodes));
  // the output directory is not part of the experiment: keep it out of the
  // echoed configuration so reruns reproduce outputs byte for byte
  cfg.erase("out");
  return cfg;
}

PopulationSpectrum population_from_config(const Config& cfg) {
  if (cfg.has("H")) return load_population_spectrum(cfg.get_string("H"));
  return PopulationSpectrum::point_mass(cfg.get_double("sigma2", 1.0));
}

EntryLaw law_from_config(const Config& cfg) {
  const std::string name = cfg.get_string("law", "gaussian");
  if (name == "gaussian") return EntryLaw::gaussian();
  if (name == "rademacher") return EntryLaw::rademacher();
  if (name == "three_point") return EntryLaw::three_point(cfg.get_double("q"));
  throw ConfigError("unknown entry law: " + name);
}

TestFunction g_from_config(const Config& cfg) {
  if (!cfg.has("g")) return TestFunction::monomial(1);
  return TestFunction(cfg.get_doubles("g"));
}

std::uint64_t required_seed(const Config& cfg) {
  if (!cfg.has("seed"))
    throw ConfigError("randomized commands require an explicit seed (--seed or seed=...)");
  return cfg.get_u64("seed");
}

json config_json(const Config& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.entries()) j[k] = v;
  return j;
}

json spectrum_json(const PopulationSpectrum& H) {
  json j = json::array();
  for (const auto& a : H.atoms()) j.push_back({a.tau, a.weight});
  return j;
}

void write_outputs(const Config& cfg, const std::string& out_dir, const std::string& command,
                   const json& report) {
  const fs::path out(out_dir);
  fs::create_directories(out);
  write_text_file((out / (command + "_config.txt")).string(), cfg.serialize());
  write_text_file((out / (command + ".json")).string(), report.dump(2) + "\n");
}

double aspect_from_config(const Config& cfg) {
  if (cfg.has("c")) return cfg.get_double("c");
  if (cfg.has("p") && cfg.has("n"))
    return static_cast<double>(cfg.get_int("p")) / cfg.get_int("n");
  throw ConfigError("need either c or both p and n");
}

// conditional CDF of the nonzero part of the limit law vs the EDF of the
// nonzero pseudoinverse eigenvalues
double nonzero_sup_cdf_gap(const SpectralLimit& limit, const std::vector<double>& nonzero) {
  const EmpiricalSpectrum edf{std::vector<double>(nonzero)};
  const double ac_mass = 1.0 - limit.atom_mass;
  double sup = 0.0;
  for (double t : nonzero) {
    const double model = (limit.cdf(t) - limit.atom_mass) / ac_mass;
    sup = std::max(sup, std::abs(edf_evaluate(edf, t) - model));
  }
  return sup;
}

int cmd_density(const GlobalArgs& g) {
  Config cfg = resolve_config(g);
  const PopulationSpectrum H = population_from_config(cfg);
  const int grid = cfg.get_int("grid", 2000);

  SpectralLimit limit;
  if (cfg.has("p") && cfg.has("n"))
    limit = finite_sample_proxy(cfg.get_int("p"), cfg.get_int("n"), H, grid);
  else
    limit = solve_limit_law(aspect_from_config(cfg), H, grid);

  const fs::path out(g.out_dir);
  fs::create_directories(out);
  write_density_csv(limit, (out / "density.csv").string());

  json report;
  report["version"] = kVersion;
  report["config"] = config_json(cfg);
  report["H"] = spectrum_json(H);
  report["atom_at_zero"] = limit.atom_mass;
  report["support"] = {limit.support_lo, limit.support_hi};
  report["total_mass"] = limit.total_mass();

  bool pass = true;
  if (cfg.get_int("overlay", 0) != 0) {
    const int p = cfg.get_int("p"), n = cfg.get_int("n");
    const SampleEnsemble ens =
        build_ensemble(law_from_config(cfg), H, p, n, required_seed(cfg));
    const PinvSpectra spectra = pinv_spectra_fast(ens);
    std::vector<double> nonzero;
    for (double v : spectra.s_plus)
      if (v != 0.0) nonzero.push_back(v);
    const double gap = nonzero_sup_cdf_gap(limit, nonzero);
    report["overlay"] = {{"p", p}, {"n", n}, {"sup_cdf_gap", gap}};

    const int bins = cfg.get_int("bins", 80);
    std::ostringstream hist;
    hist << "bin_lo,bin_hi,count,density\n";
    const double lo = limit.support_lo, hi = limit.support_hi;
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    for (double v : nonzero) {
      const int b = static_cast<int>((v - lo) / (hi - lo) * bins);
      if (b >= 0 && b < bins) ++counts[static_cast<std::size_t>(b)];
    }
    for (int b = 0; b < bins; ++b) {
      const double blo = lo + (hi - lo) * b / bins, bhi = lo + (hi - lo) * (b + 1) / bins;
      // bin density on the conditional (nonzero) scale
      const double dens = counts[static_cast<std::size_t>(b)] /
                          (static_cast<double>(nonzero.size()) * (bhi - blo));
      hist << format_double(blo) << "," << format_double(bhi) << ","
           << counts[static_cast<std::size_t>(b)] << "," << format_double(dens) << "\n";
    }
    write_text_file((out / "histogram.csv").string(), hist.str());
    pass = gap < 0.05;
  }
  report["pass"] = pass;
  write_outputs(cfg, g.out_dir, "density", report);
  return pass ? kExitOk : kExitNumerical;
}

int cmd_solve(const GlobalArgs& g) {
  Config cfg = resolve_config(g);
  const PopulationSpectrum H = population_from_config(cfg);
  const double c = aspect_from_config(cfg);
  const std::string which = cfg.get_string("which", "mP");
  if (which != "mP" && which != "mF" && which != "mFbar")
    throw ConfigError("solve: which must be one of mP, mF, mFbar");
  if (which == "mP" && !(c > 1.0)) throw ConfigError("solve: mP needs c > 1");

  const double re0 = cfg.get_double("re_min", 0.1), re1 = cfg.get_double("re_max", 6.0);
  const double im0 = cfg.get_double("im_min", 0.05), im1 = cfg.get_double("im_max", 2.0);
  const int nre = cfg.get_int("re_steps", 10), nim = cfg.get_int("im_steps", 5);
  if (nre < 1 || nim < 1) throw ConfigError("solve: steps must be >= 1");
  if (which == "mP" && !(im0 > 0.0)) throw ConfigError("solve: mP needs im_min > 0");

  std::ostringstream csv;
  csv << "re_z,im_z,re_m,im_m,residual,status\n";
  bool all_pass = true;
  for (int i = 0; i < nim; ++i) {
    for (int r = 0; r < nre; ++r) {
      const double re = nre == 1 ? re0 : re0 + (re1 - re0) * r / (nre - 1);
      const double im = nim == 1 ? im0 : im0 + (im1 - im0) * i / (nim - 1);
      const Complex z{re, im};
      Complex m;
      double residual = std::numeric_limits<double>::quiet_NaN();
      bool ok = true;
      try {
        if (which == "mP") {
          m = solve_pinv_law(z, c, H);
          residual = pinv_law_residual(m, z, c, H);
          ok = residual < 1e-10 && (!(im > 0.0) || m.imag() > 0.0);
        } else if (which == "mFbar") {
          m = companion_any(z, c, H);
          residual = companion_residual(m, z, c, H);
          ok = residual < 1e-10 && (!(im > 0.0) || m.imag() > 0.0);
        } else {
          const Complex mc = companion_any(z, c, H);
          m = companion_to_primary(mc, z, c);
          residual = companion_residual(mc, z, c, H);
          ok = residual < 1e-10 && (!(im > 0.0) || m.imag() > 0.0);
        }
      } catch (const std::exception&) {
        ok = false;
      }
      all_pass = all_pass && ok;
      csv << format_double(re) << "," << format_double(im) << "," << format_double(m.real())
          << "," << format_double(m.imag()) << "," << format_double(residual) << ","
          << (ok ? "ok" : "fail") << "\n";
    }
  }
  const fs::path out(g.out_dir);
  fs::create_directories(out);
  write_text_file((out / "solve.csv").string(), csv.str());

  json report;
  report["version"] = kVersion;
  report["config"] = config_json(cfg);
  report["which"] = which;
  report["pass"] = all_pass;
  write_outputs(cfg, g.out_dir, "solve", report);
  return all_pass ? kExitOk : kExitNumerical;
}

int cmd_simulate(const GlobalArgs& g) {
  Config cfg = resolve_config(g);
  const PopulationSpectrum H = population_from_config(cfg);
  const int p = cfg.get_int("p"), n = cfg.get_int("n");
  const std::uint64_t seed = required_seed(cfg);

  const SampleEnsemble ens = build_ensemble(law_from_config(cfg), H, p, n, seed);
  const PinvSpectra spectra = pinv_spectra_fast(ens);
  const EmpiricalSpectrum s_plus{std::vector<double>(spectra.s_plus)};
  const EmpiricalSpectrum s_tilde_plus{std::vector<double>(spectra.s_tilde_plus)};

  const fs::path out(g.out_dir);
  fs::create_directories(out);
  write_empirical_spectrum_csv(s_plus, (out / "s_plus_spectrum.csv").string());
  write_empirical_spectrum_csv(s_tilde_plus, (out / "s_tilde_plus_spectrum.csv").string());

  const double ks = ks_distance(s_plus, s_tilde_plus);
  int zeros_plus = 0, zeros_tilde = 0;
  for (double v : spectra.s_plus) zeros_plus += (v == 0.0);
  for (double v : spectra.s_tilde_plus) zeros_tilde += (v == 0.0);

  json report;
  report["version"] = kVersion;
  report["config"] = config_json(cfg);
  report["p"] = p;
  report["n"] = n;
  report["seed"] = seed;
  report["ks_distance"] = ks;
  report["ks_rank_bound"] = 2.0 / p;
  report["zero_eigenvalues_s_plus"] = zeros_plus;
  report["zero_eigenvalues_s_tilde_plus"] = zeros_tilde;
  const bool pass = ks <= 2.0 / p + 1e-15 && zeros_plus == p - n && zeros_tilde == p - n + 1;
  report["pass"] = pass;
  write_outputs(cfg, g.out_dir, "simulate", report);
  return pass ? kExitOk : kExitNumerical;
}

int cmd_check_identities(const GlobalArgs& g) {
  Config cfg = resolve_config(g);
  const PopulationSpectrum H = population_from_config(cfg);
  const int p = cfg.get_int("p", 50), n = cfg.get_int("n", 20);
  const std::uint64_t seed = cfg.get_u64("seed", 7);

  const SampleEnsemble ens = build_ensemble(law_from_config(cfg), H, p, n, seed);
  const PinvPair pair = pinv_pair(ens);

  json checks = json::array();
  bool all_pass = true;
  const auto add_check = [&](const std::string& name, double residual, double gate,
                             std::optional<Complex> z = std::nullopt) {
    const bool pass = residual < gate;
    json rec{{"check", name}, {"p", p},        {"n", n},
             {"seed", seed},  {"residual", residual}, {"pass", pass}};
    if (z) rec["z"] = {z->real(), z->imag()};
    checks.push_back(rec);
    all_pass = all_pass && pass;
  };

  {
    const auto r1 = penrose_residuals(ens.S, pair.S_plus);
    const auto r2 = penrose_residuals(ens.S_tilde, pair.S_tilde_plus);
    add_check("penrose_s", *std::max_element(r1.begin(), r1.end()), 1e-9);
    add_check("penrose_s_tilde", *std::max_element(r2.begin(), r2.end()), 1e-9);
  }
  {
    const Eigen::MatrixXd updated = pinv_rank_one_update(pair.S_plus, ens.ybar);
    add_check("rank_one_update",
              (updated - pair.S_tilde_plus).norm() / pair.S_tilde_plus.norm(), 1e-8);

    const Eigen::VectorXd u = pair.S_plus * ens.ybar;
    const Eigen::VectorXd v = pair.S_plus * u;
    const double uu = u.squaredNorm(), uv = u.dot(v);
    const Eigen::VectorXd w = std::sqrt(uv / uu) * u - std::sqrt(uu / uv) * v;
    const Eigen::MatrixXd diff = pair.S_plus - pair.S_tilde_plus;
    const Eigen::MatrixXd rank2 =
        (v * v.transpose()) / uv - (w * w.transpose()) / uu;
    add_check("rank_two_form", (rank2 - diff).norm() / std::max(1e-300, diff.norm()), 1e-8);
    add_check("rank_two_defect", rank_two_defect(diff), 1e-8);
  }
  add_check("ybar_unit_form", std::abs(ybar_unit_form(pair.S_plus, ens.ybar) - 1.0), 1e-10);
  {
    const EmpiricalSpectrum spec_splus =
        spectrum_of_clamped(pair.S_plus, pseudoinverse_cutoff(pair.S_plus));
    const int zeros = zero_eigenvalue_count(spec_splus, 0.0);
    add_check("zero_count", std::abs(zeros - (p - n)), 0.5);
    const EmpiricalSpectrum spec_b = spectrum_of(ens.companion());
    double worst = 0.0;
    Complex worst_z;
    for (int k = 0; k < 20; ++k) {
      const Complex z(-2.0 + 4.0 * k / 19.0, 0.1 + 1.9 * k / 19.0);
      const Complex lhs = empirical_stieltjes(spec_splus, z);
      const Complex rhs = -1.0 / z - (static_cast<double>(n) / p) / (z * z) *
                                         empirical_stieltjes(spec_b, 1.0 / z);
      if (std::abs(lhs - rhs) > worst) {
        worst = std::abs(lhs - rhs);
        worst_z = z;
      }
    }
    add_check("relocation", worst, 1e-10, worst_z);

    const EmpiricalSpectrum spec_tilde =
        spectrum_of_clamped(pair.S_tilde_plus, pseudoinverse_cutoff(pair.S_tilde_plus));
    double worst_xi = 0.0, worst_theta = 0.0;
    Complex worst_xi_z, worst_theta_z;
    for (int k = 0; k < 20; ++k) {
      const Complex z(-1.5 + 3.0 * k / 19.0, 0.2 + 1.6 * k / 19.0);
      const Complex xd = xi_direct(pair, ens.ybar, z);
      const Complex xs = xi_simplified(ens, z);
      if (std::abs(xd - xs) > worst_xi) {
        worst_xi = std::abs(xd - xs);
        worst_xi_z = z;
      }
      const Complex tr = theta_n(ens, z);
      const Complex td = theta_direct(pair.S_plus, ens.ybar, z);
      if (std::abs(tr - td) > worst_theta) {
        worst_theta = std::abs(tr - td);
        worst_theta_z = z;
      }
      // xi equals the trace difference of the two resolvents
      const Complex trace_diff =
          static_cast<double>(p) * (empirical_stieltjes(spec_tilde, z) -
                                    empirical_stieltjes(spec_splus, z));
      worst_xi = std::max(worst_xi, std::abs(xd - trace_diff));
    }
    add_check("xi_cross_route", worst_xi, 1e-8, worst_xi_z);
    add_check("theta_representation", worst_theta, 1e-10, worst_theta_z);

    const double ks = ks_distance(spec_tilde, spec_splus);
    add_check("edf_rank_bound", std::max(0.0, ks - 2.0 / p), 1e-15);
  }

  json report;
  report["version"] = kVersion;
  report["config"] = config_json(cfg);
  report["checks"] = checks;
  report["all_pass"] = all_pass;
  write_outputs(cfg, g.out_dir, "identities", report);
  return all_pass ? kExitOk : kExitNumerical;
}

int cmd_clt_predict(const GlobalArgs& g) {
  Config cfg = resolve_config(g);
  const PopulationSpectrum H = population_from_config(cfg);
  const double c = aspect_from_config(cfg);
  const TestFunction gfun = g_from_config(cfg);
  const double kurt = cfg.has("kurt_excess") ? cfg.get_double("kurt_excess")
                                             : law_from_config(cfg).kurtosis_excess();
  PredictOptions opts;
  opts.nodes = cfg.get_int("nodes", 2048);
  opts.margin = cfg.get_double("margin", 0.1);
  opts.y0 = cfg.get_double("y0", 0.2);
  opts.proxy_grid = cfg.get_int("grid", 2000);

  const CltPrediction nc = predict_lss(gfun, c, H, kurt, Regime::non_centered, opts);
  const CltPrediction cen = predict_lss(gfun, c, H, kurt, Regime::centered, opts);
  const CltPrediction nc_gauss = kurt == 0.0
                                     ? nc
                                     : predict_lss(gfun, c, H, 0.0, Regime::non_centered, opts);

  const auto prediction_json = [&](const CltPrediction& p, const char* regime) {
    json rec;
    rec["g"] = gfun.coefficients();
    rec["regime"] = regime;
    rec["c"] = c;
    rec["H"] = spectrum_json(H);
    rec["kurt_excess"] = kurt;
    rec["mean"] = p.mean;
    rec["variance"] = p.variance;
    rec["nodes"] = p.mean_quad.nodes;
    rec["quad_error"] = p.mean_quad.estimated_error + p.cov_quad.estimated_error;
    rec["imag_residue"] = std::max(p.mean_quad.imag_residue, p.cov_quad.imag_residue);
    if (p.regime == Regime::centered) rec["extra_term"] = p.extra_term;
    return rec;
  };

  json report;
  report["version"] = kVersion;
  report["config"] = config_json(cfg);
  report["predictions"] = {prediction_json(nc, "non_centered"),
                           prediction_json(cen, "centered")};
  report["fourth_moment_mean_summand"] = nc.mean - nc_gauss.mean;
  report["fourth_moment_cov_summand"] = nc.variance - nc_gauss.variance;
  write_outputs(cfg, g.out_dir, "clt_predict", report);
  return kExitOk;
}

int cmd_clt_verify(const GlobalArgs& g) {
  Config cfg = resolve_config(g);
  McConfig mc;
  mc.p = cfg.get_int("p", 200);
  mc.n = cfg.get_int("n", 100);
  mc.H = population_from_config(cfg);
  mc.law = law_from_config(cfg);
  mc.g = g_from_config(cfg);
  mc.replications = cfg.get_int("reps", 1000);
  if (mc.replications < 100) throw ConfigError("clt verify: needs reps >= 100");
  mc.master_seed = required_seed(cfg);
  mc.threads = static_cast<unsigned>(cfg.get_int("threads", 1));
  mc.proxy_grid = cfg.get_int("grid", 2000);

  const double c = static_cast<double>(mc.p) / mc.n;
  PredictOptions opts;
  opts.nodes = cfg.get_int("nodes", 2048);
  opts.margin = cfg.get_double("margin", 0.1);
  opts.y0 = cfg.get_double("y0", 0.2);
  opts.proxy_grid = mc.proxy_grid;
  const double kurt = mc.law.kurtosis_excess();

  const CltPrediction nc = predict_lss(mc.g, c, mc.H, kurt, Regime::non_centered, opts);
  const CltPrediction cen = predict_lss(mc.g, c, mc.H, kurt, Regime::centered, opts);
  const McResult res = mc_clt_experiment(mc);

  const double z_nc = (res.non_centered.mean - nc.mean) / res.non_centered.se_mean;
  const double z_cen = (res.centered.mean - cen.mean) / res.centered.se_mean;
  const double z_extra = (res.paired_diff_mean - cen.extra_term) / res.paired_diff_se;

  std::ostringstream csv;
  csv << "replicate,value_noncentered,value_centered\n";
  for (std::size_t i = 0; i < res.values_non_centered.size(); ++i)
    csv << i << "," << format_double(res.values_non_centered[i]) << ","
        << format_double(res.values_centered[i]) << "\n";
  const fs::path out(g.out_dir);
  fs::create_directories(out);
  write_text_file((out / "clt_replicates.csv").string(), csv.str());

  json report;
  report["version"] = kVersion;
  report["config"] = config_json(cfg);
  report["R"] = mc.replications;
  report["proxy_value"] = res.proxy_value;
  report["degenerate_events"] = res.degenerate_events;
  report["empirical"] = {
      {"non_centered",
       {{"mean", res.non_centered.mean},
        {"se_mean", res.non_centered.se_mean},
        {"variance", res.non_centered.variance},
        {"skew", res.non_centered.skewness},
        {"kurt", res.non_centered.kurtosis_excess}}},
      {"centered",
       {{"mean", res.centered.mean},
        {"se_mean", res.centered.se_mean},
        {"variance", res.centered.variance},
        {"skew", res.centered.skewness},
        {"kurt", res.centered.kurtosis_excess}}},
      {"paired_diff", {{"mean", res.paired_diff_mean}, {"se", res.paired_diff_se}}}};
  report["predicted"] = {{"non_centered_mean", nc.mean},
                         {"centered_mean", cen.mean},
                         {"variance", nc.variance},
                         {"extra_term", cen.extra_term}};
  report["z_scores"] = {{"non_centered", z_nc}, {"centered", z_cen}, {"extra", z_extra}};

  const bool pass = std::abs(z_nc) < 3.0 && std::abs(z_cen) < 3.0 && std::abs(z_extra) < 3.0;
  report["pass"] = pass;
  write_outputs(cfg, g.out_dir, "clt_verify", report);
  return pass ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of pseudoinverse sample covariance matrices"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "key=value configuration file");
  app.add_option("--out", g.out_dir, "output directory");
  std::uint64_t seed_arg = 0;
  auto* seed_opt = app.add_option("--seed", seed_arg, "master seed");
  unsigned threads_arg = 0;
  auto* threads_opt = app.add_option("--threads", threads_arg, "worker threads");
  int nodes_arg = 0;
  auto* nodes_opt = app.add_option("--nodes", nodes_arg, "contour nodes per side");

  auto* density = app.add_subcommand("density", "limit-law density export");
  auto* solve = app.add_subcommand("solve", "Stieltjes transforms on a z-grid");
  auto* simulate = app.add_subcommand("simulate", "sample one ensemble and export spectra");
  auto* check = app.add_subcommand("check-identities", "exact finite-n identity battery");
  auto* clt = app.add_subcommand("clt", "linear spectral statistic CLT");
  clt->require_subcommand(1);
  auto* predict = clt->add_subcommand("predict", "asymptotic mean and variance");
  auto* verify = clt->add_subcommand("verify", "Monte Carlo comparison against predictions");

  for (auto* sub : {density, solve, simulate, check, clt, predict, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (*seed_opt) g.seed = seed_arg;
  if (*threads_opt) g.threads = threads_arg;
  if (*nodes_opt) g.nodes = nodes_arg;

  try {
    if (*density) return cmd_density(g);
    if (*solve) return cmd_solve(g);
    if (*simulate) return cmd_simulate(g);
    if (*check) return cmd_check_identities(g);
    if (*clt) {
      if (*predict) return cmd_clt_predict(g);
      if (*verify) return cmd_clt_verify(g);
    }
    std::cerr << "no subcommand selected\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
