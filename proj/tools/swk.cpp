// Command-line front end: verify, rank, simulate.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swk/dynamics.hpp"
#include "swk/report.hpp"
#include "swk/sampling.hpp"
#include "swk/suite.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSingular = 3;

struct Options {
  int n = 2;
  double kappa = 0.0;
  std::vector<double> beta;
  std::string chart;  // empty: command default
  std::uint64_t seed = 1;
  int trials = 0;  // 0: command default
  double t_end = 10.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double output_interval = 0.0;
  std::string method = "rk45";
  std::vector<double> q;
  std::vector<double> p;
  int fixed_translation = 1;
  std::string out;
  std::string format;  // empty: command default
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "Dimension N (>= 2)")->required();
  cmd->add_option("--kappa", o.kappa, "Curvature");
  cmd->add_option("--beta", o.beta, "beta_0,...,beta_N")->delimiter(',')->required();
  cmd->add_option("--chart", o.chart, "parallel or polar");
  cmd->add_option("--seed", o.seed, "Sampling seed");
  cmd->add_option("--trials", o.trials, "Random states per check");
  cmd->add_option("--out", o.out, "Output file (default stdout)");
  cmd->add_option("--format", o.format, "json or csv");
}

swk::SWParams resolve_params(const Options& o) {
  if (o.n < 2) throw swk::ConfigError("N must be ≥ 2");
  swk::SWParams params(Eigen::Map<const Eigen::VectorXd>(o.beta.data(),
                                                         static_cast<Eigen::Index>(o.beta.size())));
  params.validate(o.n);
  return params;
}

std::string resolve_format(const Options& o, const std::string& fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "json" && f != "csv") throw swk::ConfigError("--format must be json or csv");
  return f;
}

swk::Json config_json(const std::string& command, const Options& o, const std::string& chart,
                      int trials, const std::string& format) {
  swk::Json c = {{"command", command},
                 {"n", o.n},
                 {"kappa", o.kappa},
                 {"beta", o.beta},
                 {"chart", chart},
                 {"seed", o.seed},
                 {"trials", trials},
                 {"format", format},
                 {"out", o.out}};
  return c;
}

// Writes to --out when given, else stdout.
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw swk::ConfigError("cannot open --out file " + o.out);
  file << text;
}

int run_verify(const Options& o) {
  const swk::SWParams params = resolve_params(o);
  const std::string format = resolve_format(o, "json");
  swk::SuiteConfig cfg;
  cfg.n = o.n;
  cfg.kappa = o.kappa;
  cfg.params = params;
  cfg.seed = o.seed;
  cfg.trials = o.trials > 0 ? o.trials : 100;
  if (!o.chart.empty()) cfg.charts = {swk::chart_from_string(o.chart)};

  const swk::VerifySuite suite = swk::run_verify_suite(cfg);
  if (format == "csv") {
    std::ostringstream csv;
    csv.precision(17);
    csv << "name,chart,residual,tolerance,passed\n";
    for (const auto& c : suite.checks)
      csv << c.name << ',' << c.chart << ',' << c.residual << ',' << c.tolerance << ','
          << (c.passed ? "true" : "false") << '\n';
    emit(o, csv.str());
  } else {
    swk::Json report = {
        {"config", config_json("verify", o, o.chart.empty() ? "both" : o.chart, cfg.trials, format)},
        {"timestamp", swk::utc_timestamp()},
        {"report", swk::to_json(suite)}};
    emit(o, report.dump(2) + "\n");
  }
  std::cerr << (suite.passed ? "verify: all checks passed\n" : "verify: some checks FAILED\n");
  return suite.passed ? kExitPass : kExitCheckFailed;
}

int run_rank(const Options& o) {
  const swk::SWParams params = resolve_params(o);
  const std::string format = resolve_format(o, "json");
  const swk::Curvature kappa(o.kappa);
  const swk::Chart chart = o.chart.empty() ? swk::default_chart(kappa) : swk::chart_from_string(o.chart);
  const int samples = o.trials > 0 ? o.trials : 50;
  const swk::IndependenceCertificate cert = swk::independence_certificate(
      o.n, kappa, params, samples, o.seed, chart, o.fixed_translation);
  for (const auto& w : cert.warnings) std::cerr << "warning: " << w << '\n';

  if (format == "csv") {
    std::ostringstream csv;
    csv.precision(17);
    csv << "sample,rank,gap_ratio";
    for (int k = 1; k <= cert.expected_rank; ++k) csv << ",sigma" << k;
    csv << '\n';
    for (std::size_t s = 0; s < cert.samples.size(); ++s) {
      csv << s << ',' << cert.samples[s].rank << ',' << cert.samples[s].gap_ratio;
      for (double v : cert.samples[s].singular_values) csv << ',' << v;
      csv << '\n';
    }
    emit(o, csv.str());
  } else {
    swk::Json config = config_json("rank", o, swk::to_string(chart), samples, format);
    config["fixed_translation"] = o.fixed_translation;
    swk::Json report = {{"config", config},
                        {"timestamp", swk::utc_timestamp()},
                        {"certificate", swk::to_json(cert)}};
    emit(o, report.dump(2) + "\n");
  }
  std::cerr << "rank: max " << cert.max_rank << ", expected " << cert.expected_rank << ", "
            << cert.full_rank_fraction * 100.0 << "% of samples full rank -> "
            << (cert.valid ? "pass" : "FAIL") << '\n';
  return cert.valid ? kExitPass : kExitCheckFailed;
}

int run_simulate(const Options& o) {
  const swk::SWParams params = resolve_params(o);
  const std::string format = resolve_format(o, "csv");
  const swk::Curvature kappa(o.kappa);
  const swk::Chart chart = o.chart.empty() ? swk::default_chart(kappa) : swk::chart_from_string(o.chart);

  swk::IntegratorConfig icfg;
  icfg.method = swk::method_from_string(o.method);
  icfg.t_end = o.t_end;
  icfg.rel_tol = o.rel_tol;
  icfg.abs_tol = o.abs_tol;
  icfg.max_step = o.max_step;
  icfg.output_interval = o.output_interval;
  icfg.validate();

  swk::PhaseState<double> initial;
  if (!o.q.empty() || !o.p.empty()) {
    if (static_cast<int>(o.q.size()) != o.n || static_cast<int>(o.p.size()) != o.n)
      throw swk::ConfigError("--q and --p need exactly N values each");
    initial = {chart, Eigen::Map<const Eigen::VectorXd>(o.q.data(), o.n),
               Eigen::Map<const Eigen::VectorXd>(o.p.data(), o.n)};
  } else if (!params.degenerate() && !params.has_negative()) {
    initial = swk::bounded_initial_states(o.n, kappa, params, chart, 1, o.seed).front();
  } else {
    initial = swk::StateSampler(o.n, kappa, chart, o.seed).next();
  }
  try {
    swk::check_domain(initial.point(), kappa);
  } catch (const swk::ChartDomainError& e) {
    throw swk::ConfigError(std::string("initial state: ") + e.what());
  }

  const swk::Trajectory traj = swk::integrate(initial, params, kappa, icfg);
  const swk::DriftReport drift = swk::drift_report(traj);

  swk::Json config = config_json("simulate", o, swk::to_string(chart), o.trials, format);
  config["integrator"] = swk::to_json(icfg);
  config["initial_state"] = swk::to_json(initial);
  swk::Json drift_json = {{"config", config},
                          {"timestamp", swk::utc_timestamp()},
                          {"trajectory", swk::trajectory_summary(traj)},
                          {"drift", swk::to_json(drift)}};

  if (format == "csv") {
    std::ostringstream csv;
    swk::write_trajectory_csv(csv, traj);
    emit(o, csv.str());
  } else {
    swk::Json full = drift_json;
    full["rows"] = swk::trajectory_json(traj)["rows"];
    emit(o, full.dump(2) + "\n");
  }
  (o.out.empty() ? std::cerr : std::cout) << drift_json.dump(2) << '\n';

  if (!traj.completed()) {
    std::cerr << "simulate: halted (" << swk::to_string(traj.status) << "): " << traj.message
              << "\nlast good state: " << swk::to_json(traj.last_good()).dump() << '\n';
    return kExitSingular;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smorodinsky-Winternitz systems on spaces of constant curvature"};
  app.require_subcommand(1);
  Options o;

  CLI::App* verify = app.add_subcommand("verify", "Run the structural verification suite");
  add_common(verify, o);

  CLI::App* rank = app.add_subcommand("rank", "Certify functional independence (Jacobian rank)");
  add_common(rank, o);
  rank->add_option("--fixed-translation", o.fixed_translation, "i of the I_0i in the set");

  CLI::App* simulate = app.add_subcommand("simulate", "Integrate a trajectory");
  add_common(simulate, o);
  simulate->add_option("--t-end", o.t_end, "Final time");
  simulate->add_option("--rel-tol", o.rel_tol, "Relative tolerance");
  simulate->add_option("--abs-tol", o.abs_tol, "Absolute tolerance");
  simulate->add_option("--max-step", o.max_step, "Maximum step");
  simulate->add_option("--output-interval", o.output_interval, "Log spacing (0: every step)");
  simulate->add_option("--method", o.method, "rk45 or midpoint");
  simulate->add_option("--q", o.q, "Initial coordinates")->delimiter(',');
  simulate->add_option("--p", o.p, "Initial momenta")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verify(o);
    if (rank->parsed()) return run_rank(o);
    return run_simulate(o);
  } catch (const swk::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const swk::SingularityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSingular;
  }
}
