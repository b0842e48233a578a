#include "swk/suite.hpp"

#include <algorithm>

#include "swk/poisson.hpp"
#include "swk/residual.hpp"
#include "swk/sampling.hpp"

namespace swk {

namespace {

bool polar_representable(const PhaseState<double>& s, Curvature kappa) {
  try {
    check_domain(convert_point(s.point(), Chart::Polar, kappa), kappa, 1e-2);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

}  // namespace

double generator_agreement(const std::vector<PhaseState<double>>& states, Curvature kappa) {
  double worst = 0.0;
  for (const auto& s : states)
    for (const auto& id : all_generators(s.dim()))
      worst = worst_of(worst, std::abs(generator_value(id, s, kappa) - realize_ambient(id, s, kappa)));
  return worst;
}

double cross_chart_agreement(const std::vector<PhaseState<double>>& parallel_states,
                             Curvature kappa) {
  double worst = 0.0;
  for (const auto& s : parallel_states) {
    const PhaseState<double> polar = convert_state(s, Chart::Polar, kappa);
    for (const auto& id : all_generators(s.dim()))
      worst = worst_of(worst,
                       std::abs(generator_value(id, s, kappa) - generator_value(id, polar, kappa)));
  }
  return worst;
}

double casimir_residual(const std::vector<PhaseState<double>>& states, Curvature kappa) {
  double worst = 0.0;
  for (const auto& s : states)
    worst = worst_of(worst, std::abs(2.0 * kinetic_energy(s, kappa) - casimir_value(s, kappa)));
  return worst;
}

double chart_invariance_residual(const std::vector<PhaseState<double>>& parallel_states,
                                 const SWParams& params, Curvature kappa) {
  double worst = 0.0;
  for (const auto& s : parallel_states) {
    const PhaseState<double> polar = convert_state(s, Chart::Polar, kappa);
    worst = worst_of(worst, std::abs(hamiltonian(s, params, kappa) - hamiltonian(polar, params, kappa)));
    for (const auto& id : integral_ids(s.dim()))
      worst = worst_of(worst, std::abs(integral(id, s, params, kappa) -
                                       integral(id, polar, params, kappa)));
  }
  return worst;
}

double jacobi_residual_max(const std::vector<PhaseState<double>>& states, Curvature kappa) {
  double worst = 0.0;
  for (const auto& s : states) {
    const auto gens = realize_all(s.dim(), kappa, s.chart);
    // The first N+1 generators (all translations and J12) mix both kinds.
    const std::size_t k = std::min<std::size_t>(gens.size(), static_cast<std::size_t>(s.dim()) + 1);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        for (std::size_t c = b + 1; c < k; ++c)
          worst = worst_of(worst, std::abs(jacobi_residual(gens[a].function, gens[b].function,
                                                           gens[c].function, s)));
  }
  return worst;
}

VerifySuite run_verify_suite(const SuiteConfig& config) {
  if (config.n < 2) throw ConfigError("N must be >= 2");
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  config.params.validate(config.n);
  const Curvature kappa(config.kappa);

  VerifySuite suite;
  suite.config = config;
  auto add = [&](std::string name, std::string chart, double residual, double tol) {
    suite.checks.push_back({std::move(name), std::move(chart), residual, tol, residual <= tol});
  };

  std::uint64_t offset = 0;
  for (const Chart chart : config.charts) {
    const std::string label = to_string(chart);
    StateSampler sampler(config.n, kappa, chart, config.seed + 1000 * ++offset);
    const auto states = sampler.take(config.trials);

    suite.algebra.push_back(verify_algebra(config.n, kappa, chart, config.trials, config.seed));
    add("algebra_homomorphism", label, suite.algebra.back().max_residual, 1e-10);
    add("generator_ambient_agreement", label, generator_agreement(states, kappa), 1e-11);
    add("casimir", label, casimir_residual(states, kappa), 1e-11);

    double sum_rule = 0.0;
    for (const auto& s : states) sum_rule = worst_of(sum_rule, sum_rule_residual(s, config.params, kappa));
    add("sum_rule", label, sum_rule, 1e-10);

    suite.involution.push_back(
        verify_involution(config.n, kappa, config.params, config.trials, config.seed, chart));
    const InvolutionReport& inv = suite.involution.back();
    for (const std::string group : {"disjoint", "conservation", "up", "down"}) {
      double worst = 0.0;
      for (const auto& c : inv.checks)
        if (c.group == group) worst = worst_of(worst, c.residual);
      add("involution_" + group, label, worst, inv.tolerance);
    }

    const std::vector<PhaseState<double>> few(states.begin(),
                                              states.begin() + std::min(3, config.trials));
    add("jacobi_identity", label, jacobi_residual_max(few, kappa), 1e-6);
  }

  if (std::find(config.charts.begin(), config.charts.end(), Chart::Parallel) !=
          config.charts.end() &&
      std::find(config.charts.begin(), config.charts.end(), Chart::Polar) != config.charts.end()) {
    StateSampler sampler(config.n, kappa, Chart::Parallel, config.seed + 7);
    std::vector<PhaseState<double>> states;
    // Keep only points the polar chart can represent.
    while (static_cast<int>(states.size()) < config.trials) {
      PhaseState<double> s = sampler.next();
      if (polar_representable(s, kappa)) states.push_back(std::move(s));
    }
    add("cross_chart_generators", "both", cross_chart_agreement(states, kappa), 1e-11);
    add("chart_invariance", "both", chart_invariance_residual(states, config.params, kappa), 1e-10);
  }

  if (config.kappa == 0.0) {
    suite.limit = euclidean_limit_check(config.n, config.params, config.trials, config.seed);
    suite.checks.push_back({"euclidean_limit", "parallel", suite.limit->deviations.back(),
                            suite.limit->tolerance, suite.limit->passed});
  }

  suite.passed = std::all_of(suite.checks.begin(), suite.checks.end(),
                             [](const SuiteCheck& c) { return c.passed; });
  return suite;
}

}  // namespace swk
