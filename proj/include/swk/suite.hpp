#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swk/swsystem.hpp"

namespace swk {

/// max |X̃(chart) - X̃(ambient)| over all generators and states.
double generator_agreement(const std::vector<PhaseState<double>>& states, Curvature kappa);

/// max |X̃_parallel(s) - X̃_polar(convert(s))| over all generators; states
/// must be in the parallel chart.
double cross_chart_agreement(const std::vector<PhaseState<double>>& parallel_states,
                             Curvature kappa);

/// max |2T - C̃| over states.
double casimir_residual(const std::vector<PhaseState<double>>& states, Curvature kappa);

/// max over states of |I(s) - I(convert(s))| for every integral and H; states
/// must be in the parallel chart.
double chart_invariance_residual(const std::vector<PhaseState<double>>& parallel_states,
                                 const SWParams& params, Curvature kappa);

/// max |{f,{g,h}} + cyclic| over generator triples at the states (outer
/// brackets by finite differences, so only ~1e-6 is meaningful).
double jacobi_residual_max(const std::vector<PhaseState<double>>& states, Curvature kappa);

struct SuiteConfig {
  int n = 2;
  double kappa = 0.0;
  SWParams params;
  std::vector<Chart> charts{Chart::Parallel, Chart::Polar};
  std::uint64_t seed = 1;
  int trials = 100;
};

struct SuiteCheck {
  std::string name;
  std::string chart;  // "parallel", "polar" or "both"
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifySuite {
  SuiteConfig config;
  std::vector<SuiteCheck> checks;
  std::vector<AlgebraReport> algebra;
  std::vector<InvolutionReport> involution;
  std::optional<LimitReport> limit;  // only for κ = 0
  bool passed = false;
};

/// Runs every structural check for one (N, κ, β): algebra homomorphism,
/// generator agreement, Casimir, sum rule, involution, chart invariance,
/// Jacobi identity and, at κ = 0, the Euclidean limit.
VerifySuite run_verify_suite(const SuiteConfig& config);

}  // namespace swk
