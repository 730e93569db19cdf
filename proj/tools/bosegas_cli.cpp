// bosegas: command-line front end.
//
//   bosegas scatter   --config run.json [--out DIR] [--format csv|doc]
//   bosegas energy    --config run.json
//   bosegas lhy-check --config run.json
//   bosegas oracle    [--config run.json] [--seed N] [--inject-fault NAME]
//   bosegas phi-table [--config run.json]
//
// Exit codes: 0 ok, 1 verification failure, 2 config error, 3 domain error,
// 4 numeric non-convergence.

#include "bose/asymptotics.hpp"
#include "bose/error.hpp"
#include "bose/fock_oracle.hpp"
#include "bose/io.hpp"
#include "bose/parallel.hpp"
#include "bose/pipeline.hpp"
#include "bose/potential.hpp"
#include "bose/scattering.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <numbers>

namespace {

using namespace bose;

struct Common {
  std::string config;
  std::string out;
  std::string format;
  int threads = 1;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string fault;
  bool zero_pairs = false;
};

RunConfig load(const Common& c, bool required) {
  RunConfig cfg;
  if (!c.config.empty()) {
    cfg = load_config(c.config);
  } else if (required) {
    throw ConfigError("--config is required for this command");
  } else {
    cfg = parse_config("{}");
  }
  apply_env_overrides(cfg);
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (!c.format.empty()) cfg.format = c.format;
  if (c.seed_set) cfg.oracle.seed = c.seed;
  if (!c.fault.empty()) cfg.oracle.fault = c.fault;
  if (c.zero_pairs) cfg.oracle.zero_pairs = true;
  return cfg;
}

void stamp(Table& t, const RunConfig& cfg, const std::string& command) {
  t.add_meta("tool", "bosegas");
  t.add_meta("version", tool_version());
  t.add_meta("command", command);
  t.add_meta("config_hash", config_hash(cfg));
}

std::filesystem::path emit(const RunConfig& cfg, const std::string& stem, const Table& t) {
  const bool doc = cfg.format == "doc";
  const std::filesystem::path path = std::filesystem::path(cfg.out_dir) / (stem + (doc ? ".json" : ".csv"));
  write_atomic(path, doc ? render_doc(t) : render_csv(t));
  return path;
}

std::vector<std::string> cells(std::initializer_list<double> xs) {
  std::vector<std::string> out;
  for (double x : xs) out.push_back(format_number(x));
  return out;
}

void describe_potential(Table& t, const PotentialSpec& spec) {
  t.add_meta("family", to_string(spec.family));
  t.add_meta("lambda", spec.lambda);
  t.add_meta("sigma", spec.sigma);
}

ScatteringSolution scatter_ode(const RunConfig& cfg) {
  RadialOptions ro;
  ro.tol = cfg.tolerance("scattering");
  return solve_radial(*cfg.potential, ro);
}

int cmd_scatter(const RunConfig& cfg) {
  cfg.require("potential", "scatter");
  const PotentialSpec& spec = *cfg.potential;
  const ScatteringSolution sol = scatter_ode(cfg);
  double a_born = 0.0;
  double gap = 0.0;
  const double route_tol = cfg.tolerance("route_coefficient") * std::pow(spec.lambda, 3);
  if (spec.lambda > 0.0) {
    const ScatteringSolution born = born_series(spec, born_measure(spec), cfg.born_order);
    a_born = born.a;
    gap = std::abs(born.a - sol.a) / sol.a;
  }
  const bool route_ok = gap <= route_tol;
  const bool below = spec.lambda == 0.0 || 8.0 * std::numbers::pi * sol.a < sol.v0;

  Table t;
  stamp(t, cfg, "scatter");
  describe_potential(t, spec);
  t.add_meta("method", sol.method);
  t.add_meta("a", sol.a);
  t.add_meta("a_integral", sol.a_integral);
  t.add_meta("h", sol.h);
  t.add_meta("v_hat_0", sol.v0);
  t.add_meta("f_hat_0", sol.f0);
  t.add_meta("g_hat_0", sol.g0);
  t.add_meta("kappa", sol.kappa);
  t.add_meta("born_order", static_cast<double>(cfg.born_order));
  t.add_meta("a_born", a_born);
  t.add_meta("route_gap", gap);
  t.add_meta("route_tolerance", route_tol);
  t.add_meta("route_agreement", route_ok ? "pass" : "fail");
  t.add_meta("eight_pi_a_below_v_hat_0", below ? "pass" : "fail");
  t.columns = {"p", "w_hat", "f_hat", "g_hat"};
  for (Eigen::Index i = 0; i < sol.p_grid.size(); ++i) {
    t.rows.push_back(cells({sol.p_grid(i), sol.w_hat(i), sol.f_hat(i), sol.g_hat(i)}));
  }
  const auto path = emit(cfg, "scatter", t);
  std::cout << "a = " << format_number(sol.a) << "  h = " << format_number(sol.h) << "  route gap "
            << format_number(gap) << " (" << (route_ok ? "ok" : "FAIL") << ")  -> " << path.string() << "\n";
  if (!route_ok) std::cerr << "scatter: ODE and Born scattering lengths disagree\n";
  if (!below) std::cerr << "scatter: 8 pi a >= V_hat(0)\n";
  return route_ok && below ? 0 : 1;
}

void check_dilute(const RunConfig& cfg, const ScatteringSolution& scat) {
  if (!(scat.a > 0.0)) throw DomainError("scattering length vanishes; nothing to compute");
  for (double r : cfg.rho) {
    if (r * std::pow(scat.a, 3) > cfg.tolerance("dilute")) {
      throw DomainError("rho = " + format_number(r) + " is outside the dilute regime (rho a^3 = " +
                        format_number(r * std::pow(scat.a, 3)) + ")");
    }
  }
}

int cmd_energy(const RunConfig& cfg) {
  cfg.require("potential", "energy");
  cfg.require("physics", "energy");
  if (cfg.rho.empty()) throw ConfigError("energy: physics.rho is required");
  const ScatteringSolution scat = scatter_ode(cfg);
  check_dilute(cfg, scat);
  const EnergyOptions opts = cfg.energy_options();
  std::vector<EnergyLimit> lim(cfg.rho.size());
  parallel_for(cfg.rho.size(), [&](std::size_t i) { lim[i] = energy_limit(scat, cfg.rho[i], opts); });

  Table pts;
  stamp(pts, cfg, "energy");
  describe_potential(pts, *cfg.potential);
  pts.add_meta("a", scat.a);
  pts.columns = {"rho", "L", "nodes", "per_particle", "E_total", "E_M", "Omega2", "Omega4"};
  for (const auto& name : channel_names()) pts.columns.push_back(name);
  pts.columns.push_back("depletion");
  for (const auto& l : lim) {
    for (const auto& b : l.boxes) {
      auto row = cells({b.rho, b.L, static_cast<double>(b.nodes), b.energy.per_particle, b.energy.E_total, b.energy.E_M,
                        b.energy.Omega2, b.energy.Omega4});
      for (const auto& name : channel_names()) row.push_back(format_number(b.energy.channel(name)));
      row.push_back(format_number(b.depletion));
      pts.rows.push_back(row);
    }
  }
  Table ext;
  stamp(ext, cfg, "energy");
  describe_potential(ext, *cfg.potential);
  ext.add_meta("a", scat.a);
  ext.add_meta("extrapolation", "Richardson in 1/L, orders 3 and 6");
  ext.columns = {"rho", "per_particle", "per_particle_error", "leading_ratio", "kappa", "depletion"};
  for (const auto& l : lim) {
    const double lead = 4.0 * std::numbers::pi * l.rho * scat.a;
    ext.rows.push_back(cells({l.rho, l.per_particle.value, l.per_particle.error_estimate, l.per_particle.value / lead,
                              l.kappa, l.depletion.value}));
  }
  emit(cfg, "energy", pts);
  const auto path = emit(cfg, "energy_limit", ext);
  std::cout << lim.size() << " densities -> " << path.string() << "\n";
  return 0;
}

int cmd_lhy(const RunConfig& cfg) {
  cfg.require("potential", "lhy-check");
  cfg.require("physics", "lhy-check");
  const ScatteringSolution scat = scatter_ode(cfg);
  check_dilute(cfg, scat);
  const EnergyOptions opts = cfg.energy_options();
  const LhyCheck r = lhy_check(scat, cfg.rho, cfg.tolerance("lhy"), opts);
  Table t;
  stamp(t, cfg, "lhy-check");
  describe_potential(t, *cfg.potential);
  t.add_meta("a", r.a);
  t.add_meta("h", r.h);
  t.add_meta("phi", r.phi);
  t.add_meta("target", r.target);
  t.add_meta("kappa0", r.fit.kappa0);
  t.add_meta("fit_b", r.fit.b);
  t.add_meta("fit_c", r.fit.c);
  t.add_meta("fit_rms", r.fit.rms);
  t.add_meta("ratio", r.ratio);
  t.add_meta("tolerance", cfg.tolerance("lhy"));
  t.add_meta("depletion_exponent", r.depletion_exponent);
  t.add_meta("residual_bounded", r.residual_bounded ? "yes" : "no");
  if (!cfg.lambda_scan.empty()) {
    const double rho_mid = cfg.rho[cfg.rho.size() / 2];
    const DepletionScan d = depletion_vs_lambda(cfg.potential->sigma, cfg.lambda_scan, rho_mid, opts);
    t.add_meta("lambda_scan_rho", rho_mid);
    t.add_meta("depletion_lambda_exponent", d.exponent);
  }
  t.add_meta("verdict", r.pass ? "pass" : "fail");
  t.columns = {"rho", "kappa", "residual_ratio", "depletion", "per_particle", "per_particle_error"};
  for (std::size_t i = 0; i < r.rho.size(); ++i) {
    t.rows.push_back(cells({r.rho[i], r.kappa[i], r.residual_ratio[i], r.points[i].depletion.value,
                            r.points[i].per_particle.value, r.points[i].per_particle.error_estimate}));
  }
  const auto path = emit(cfg, "lhy", t);
  std::cout << "kappa0 = " << format_number(r.fit.kappa0) << "  target = " << format_number(r.target)
            << "  ratio = " << format_number(r.ratio) << "  " << (r.pass ? "pass" : "FAIL") << "  -> " << path.string()
            << "\n";
  return r.pass ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg) {
  const fock::OracleReport rep = fock::run_oracle(cfg.oracle);
  Table t;
  stamp(t, cfg, "oracle");
  t.add_meta("n_max", static_cast<double>(cfg.oracle.n_max));
  t.add_meta("c_bound", cfg.oracle.c_bound);
  t.add_meta("sqrtN0_bound", cfg.oracle.sqrtN0_bound);
  t.add_meta("seed", static_cast<double>(cfg.oracle.seed));
  t.add_meta("max_tail_bound", rep.max_tail_bound);
  if (!cfg.oracle.fault.empty()) t.add_meta("injected_fault", cfg.oracle.fault);
  t.add_meta("verdict", rep.all_pass ? "pass" : "fail");
  t.columns = {"formula", "worst_case", "brute", "analytic", "error", "tolerance", "tail_bound", "draws", "pass"};
  for (const auto& c : rep.checks) {
    std::vector<std::string> row{c.name, c.expression};
    for (double x : {c.brute, c.analytic, c.error, c.tolerance, c.tail_bound, static_cast<double>(c.draws)}) {
      row.push_back(format_number(x));
    }
    row.emplace_back(c.pass ? "pass" : "fail");
    t.rows.push_back(row);
  }
  const auto path = emit(cfg, "oracle", t);
  std::cout << rep.checks.size() << " formulas, " << (rep.all_pass ? "all pass" : "FAILURES") << "  -> "
            << path.string() << "\n";
  for (const auto& f : rep.failures()) std::cerr << "oracle: formula '" << f << "' disagrees with brute force\n";
  return rep.all_pass ? 0 : 1;
}

int cmd_phi(const RunConfig& cfg) {
  std::vector<double> hs = cfg.phi_h;
  if (hs.empty()) hs = {0.0, 1e-4, 1e-3, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};
  Table t;
  stamp(t, cfg, "phi-table");
  t.add_meta("phi_prime_0", phi_prime0());
  t.columns = {"h", "phi", "s_lambda", "quadrature_error"};
  for (double h : hs) {
    const PhiResult r = phi(h);
    t.rows.push_back(cells({h, r.value, s_lambda(h), r.quadrature_error}));
  }
  const auto path = emit(cfg, "phi", t);
  std::cout << hs.size() << " rows -> " << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezed trial state energies for the dilute Bose gas"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("bosegas ") + bose::tool_version());
  Common common;
  auto add_common = [&common](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", common.config, "JSON run configuration");
    if (config_required) opt->required();
    sub->add_option("--out", common.out, "output directory (overrides outputs.directory)");
    sub->add_option("--format", common.format, "csv or doc")->check(CLI::IsMember({"csv", "doc"}));
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option_function<std::uint64_t>(
        "--seed",
        [&common](const std::uint64_t& s) {
          common.seed = s;
          common.seed_set = true;
        },
        "seed for randomized suites");
  };
  CLI::App* scatter = app.add_subcommand("scatter", "solve the scattering equation, write transform tables");
  CLI::App* energy = app.add_subcommand("energy", "trial-state energies on lattices and their L limit");
  CLI::App* lhy = app.add_subcommand("lhy-check", "second-order coefficient from a density sweep");
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force Fock-space checks of the moment formulas");
  CLI::App* phit = app.add_subcommand("phi-table", "Phi(h) and S_lambda on a grid of h");
  add_common(scatter, true);
  add_common(energy, true);
  add_common(lhy, true);
  add_common(oracle, false);
  add_common(phit, false);
  oracle->add_option("--inject-fault", common.fault, "negate the analytic value of one formula (test mode)");
  oracle->add_flag("--zero-pairs", common.zero_pairs, "run with all pair parameters zero");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(bose::ExitCode::config_error);
  }

  try {
    bose::set_thread_count(common.threads);
    if (scatter->parsed()) return cmd_scatter(load(common, true));
    if (energy->parsed()) return cmd_energy(load(common, true));
    if (lhy->parsed()) return cmd_lhy(load(common, true));
    if (oracle->parsed()) return cmd_oracle(load(common, false));
    if (phit->parsed()) return cmd_phi(load(common, false));
  } catch (const bose::Error& e) {
    std::cerr << "bosegas: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "bosegas: " << e.what() << "\n";
    return static_cast<int>(bose::ExitCode::config_error);
  } catch (const std::exception& e) {
    std::cerr << "bosegas: " << e.what() << "\n";
    return static_cast<int>(bose::ExitCode::numeric_error);
  }
  return static_cast<int>(bose::ExitCode::config_error);
}
