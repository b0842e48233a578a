#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "swk/swsystem.hpp"

namespace swk {

/// (∂H/∂p, -∂H/∂q) stacked as a 2N vector, from exact dual gradients.
Eigen::VectorXd hamiltons_rhs(const PhaseState<double>& state, const SWParams& params,
                              Curvature kappa);

enum class Method { RK45, Midpoint };

std::string to_string(Method m);
/// "rk45" or "midpoint"; throws ConfigError otherwise.
Method method_from_string(const std::string& name);

struct IntegratorConfig {
  Method method = Method::RK45;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.1;
  double t_end = 10.0;
  /// Implicit midpoint step size.
  double fixed_step = 1e-2;
  /// Log spacing in time; 0 logs every accepted step.
  double output_interval = 0.0;
  /// Halt when |sᵢ| drops below this for some βᵢ ≠ 0.
  double singularity_threshold = 1e-6;
  /// Switch charts when the chart health drops below this.
  double switch_health = 5e-2;
  /// Halt when no chart is healthier than this.
  double min_health = 1e-3;
  bool allow_chart_switch = true;

  /// Throws ConfigError on non-positive tolerances or steps, or negative t_end.
  void validate() const;
};

/// Polar chart for κ > 0, parallel otherwise.
Chart default_chart(Curvature kappa);

/// In [0, 1]: how far the point is from the chart's coordinate singularities.
/// Parallel: min_l |Cκ(a_l)| (0 outside the domain). Polar: min(|Sκ(r)|, |sin θ_l|), capped at 1.
double chart_health(const ChartPoint<double>& q, Curvature kappa);

enum class TrajectoryStatus { Completed, SingularityHalt, ChartEscape, StepUnderflow };

std::string to_string(TrajectoryStatus s);

struct Trajectory {
  int n = 0;
  double kappa = 0.0;
  SWParams params;
  IntegratorConfig config;

  std::vector<double> times;
  std::vector<PhaseState<double>> states;
  std::vector<std::string> invariant_names;  // "H", "I_0_1", ...
  std::vector<Eigen::VectorXd> invariants;   // one row per logged state

  TrajectoryStatus status = TrajectoryStatus::Completed;
  std::string message;
  /// Halt diagnostics: index of the vanishing sᵢ, -1 if none.
  int singular_index = -1;
  long accepted_steps = 0;
  long rejected_steps = 0;
  int chart_switches = 0;

  bool completed() const { return status == TrajectoryStatus::Completed; }
  const PhaseState<double>& last_good() const { return states.back(); }
};

/// H and every I_ij at a state, in `invariant_names` order.
Eigen::VectorXd invariant_values(const PhaseState<double>& state, const SWParams& params,
                                 Curvature kappa);
std::vector<std::string> invariant_names(int n);

/// Integrates Hamilton's equations from `initial` to config.t_end.
/// Halts (never throws) on wall approach, chart escape or step underflow;
/// the last logged state is then the last good one.
Trajectory integrate(const PhaseState<double>& initial, const SWParams& params, Curvature kappa,
                     const IntegratorConfig& config);

struct InvariantDrift {
  std::string name;
  double initial = 0.0;
  double max_abs_drift = 0.0;
  double max_rel_drift = 0.0;  // relative to max(|initial|, 1e-12)
  double time_of_max = 0.0;
  std::size_t index_of_max = 0;
};

struct DriftReport {
  std::vector<InvariantDrift> invariants;
  double max_rel_drift = 0.0;
  /// max |{I_ij, H}| recomputed at up to `bracket_samples` logged states.
  double max_bracket_residual = 0.0;
  int bracket_samples = 0;
  double max_sum_rule_residual = 0.0;
  std::size_t logged_states = 0;
};

/// Drift of each logged invariant against its first value, plus recomputed
/// brackets and the sum-rule residual along the trajectory.
/// Throws std::invalid_argument on an empty trajectory.
DriftReport drift_report(const Trajectory& traj, int bracket_samples = 20);

/// Integrate forward, flip momenta, integrate again, flip back; returns the
/// max abs difference to `initial` in its chart, or +inf if either leg halted.
double time_reversal_error(const PhaseState<double>& initial, const SWParams& params,
                           Curvature kappa, const IntegratorConfig& config);

/// Random states with all βᵢ > 0 walls keeping motion bounded and H below
/// `max_energy`. For κ < 0 the cap is also 0.9·β₀, under the asymptotic
/// potential, so orbits cannot escape. Throws ConfigError unless every βᵢ > 0.
std::vector<PhaseState<double>> bounded_initial_states(
    int n, Curvature kappa, const SWParams& params, Chart chart, int count, std::uint64_t seed,
    double max_energy = std::numeric_limits<double>::infinity());

}  // namespace swk
