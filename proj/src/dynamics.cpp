#include "swk/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "swk/residual.hpp"
#include "swk/sampling.hpp"

namespace swk {

namespace {

Eigen::VectorXd rhs_from(const PhaseFunction& h, const PhaseState<double>& state) {
  const int n = state.dim();
  const Eigen::VectorXd grad = gradient(h, state);
  Eigen::VectorXd out(2 * n);
  out << grad.tail(n), -grad.head(n);
  return out;
}

// Index of a vanishing wall coordinate, or -1.
int wall_index(const PhaseState<double>& state, const SWParams& params, Curvature kappa,
               double threshold) {
  const Eigen::VectorXd s = to_weierstrass(state.point(), kappa);
  int worst = -1;
  for (int i = 0; i < s.size(); ++i) {
    if (params.beta(i) != 0.0 && std::abs(s(i)) < threshold &&
        (worst < 0 || std::abs(s(i)) < std::abs(s(worst)))) {
      worst = i;
    }
  }
  return worst;
}

class Integrator {
 public:
  Integrator(const PhaseState<double>& initial, const SWParams& params, Curvature kappa,
             const IntegratorConfig& config)
      : params_(params), kappa_(kappa), config_(config), h_(hamiltonian_function(params, kappa)) {
    traj_.n = initial.dim();
    traj_.kappa = kappa.value();
    traj_.params = params;
    traj_.config = config;
    traj_.invariant_names = invariant_names(initial.dim());
    state_ = initial;
  }

  Trajectory run() {
    if (!start()) return std::move(traj_);
    if (config_.method == Method::RK45) {
      run_rk45();
    } else {
      run_midpoint();
    }
    return std::move(traj_);
  }

 private:
  bool start() {
    try {
      check_domain(state_.point(), kappa_);
    } catch (const ChartDomainError& e) {
      return halt_at_start(TrajectoryStatus::ChartEscape, e.what(), -1);
    }
    if (const int i = wall_index(state_, params_, kappa_, config_.singularity_threshold); i >= 0)
      return halt_at_start(TrajectoryStatus::SingularityHalt,
                           "initial state within the singularity guard of s_" + std::to_string(i),
                           i);
    log(0.0);
    next_output_ = config_.output_interval;
    return true;
  }

  bool halt_at_start(TrajectoryStatus status, const std::string& what, int index) {
    traj_.status = status;
    traj_.message = what;
    traj_.singular_index = index;
    traj_.times.push_back(0.0);
    traj_.states.push_back(state_);
    traj_.invariants.push_back(Eigen::VectorXd::Constant(
        static_cast<Eigen::Index>(traj_.invariant_names.size()),
        std::numeric_limits<double>::quiet_NaN()));
    return false;
  }

  void log(double t) {
    traj_.times.push_back(t);
    traj_.states.push_back(state_);
    traj_.invariants.push_back(invariant_values(state_, params_, kappa_));
    logged_current_ = true;
  }

  void halt(TrajectoryStatus status, std::string message, int index) {
    traj_.status = status;
    traj_.message = std::move(message);
    traj_.singular_index = index;
  }

  Eigen::VectorXd rhs(const Eigen::VectorXd& x) const {
    return rhs_from(h_, PhaseState<double>::unpacked(state_.chart, x));
  }

  // Post-step bookkeeping for an accepted candidate state; returns false on halt.
  bool accept(const PhaseState<double>& candidate, double t) {
    const PhaseState<double> previous = state_;
    const bool previous_logged = logged_current_;
    if (const int i = wall_index(candidate, params_, kappa_, config_.singularity_threshold);
        i >= 0) {
      if (!previous_logged) log(t_prev_);
      halt(TrajectoryStatus::SingularityHalt,
           "trajectory reached |s_" + std::to_string(i) + "| < " +
               std::to_string(config_.singularity_threshold) + " at t = " + std::to_string(t),
           i);
      return false;
    }
    state_ = candidate;
    logged_current_ = false;
    ++traj_.accepted_steps;

    double health = chart_health(state_.point(), kappa_);
    if (health < config_.switch_health && config_.allow_chart_switch) {
      const Chart other = state_.chart == Chart::Parallel ? Chart::Polar : Chart::Parallel;
      try {
        const PhaseState<double> moved = convert_state(state_, other, kappa_);
        const double other_health = chart_health(moved.point(), kappa_);
        if (other_health > health && moved.packed().allFinite()) {
          state_ = moved;
          health = other_health;
          ++traj_.chart_switches;
          chart_changed_ = true;
        }
      } catch (const std::domain_error&) {
        // No usable representation in the other chart; stay.
      }
    }
    if (health < config_.min_health) {
      state_ = previous;
      if (!previous_logged) log(t_prev_);
      halt(TrajectoryStatus::ChartEscape,
           "no chart with health >= " + std::to_string(config_.min_health) +
               " at t = " + std::to_string(t),
           -1);
      return false;
    }
    t_prev_ = t;
    const bool at_output = config_.output_interval <= 0.0 ||
                           t >= next_output_ - 1e-12 * std::max(1.0, t) ||
                           t >= config_.t_end;
    if (at_output) {
      log(t);
      while (config_.output_interval > 0.0 && next_output_ <= t + 1e-12 * std::max(1.0, t))
        next_output_ += config_.output_interval;
    }
    return true;
  }

  double step_limit(double t, double dt) const {
    dt = std::min({dt, config_.max_step, config_.t_end - t});
    if (config_.output_interval > 0.0) dt = std::min(dt, next_output_ - t);
    return dt;
  }

  bool underflow(double t, double dt) {
    if (dt > 1e-14 * std::max(1.0, std::abs(t))) return false;
    if (!logged_current_) log(t_prev_);
    halt(TrajectoryStatus::StepUnderflow, "step size underflow at t = " + std::to_string(t), -1);
    return true;
  }

  void run_rk45() {
    namespace odeint = boost::numeric::odeint;
    using state_type = std::vector<double>;
    auto stepper = odeint::make_controlled(config_.abs_tol, config_.rel_tol,
                                           odeint::runge_kutta_dopri5<state_type>());
    auto system = [this](const state_type& x, state_type& dxdt, double) {
      const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
      const Eigen::VectorXd d = rhs(xv);
      dxdt.assign(d.data(), d.data() + d.size());
    };

    double t = 0.0;
    double dt = std::min(config_.max_step, 1e-3);
    while (t < config_.t_end) {
      const Eigen::VectorXd packed = state_.packed();
      state_type x(packed.data(), packed.data() + packed.size());
      double t_try = t;
      double dt_try = step_limit(t, dt);
      if (underflow(t, dt_try)) return;
      odeint::controlled_step_result result;
      try {
        result = stepper.try_step(system, x, t_try, dt_try);
      } catch (const std::domain_error&) {
        // A stage point left the chart or hit a wall: shrink and retry.
        stepper.reset();
        ++traj_.rejected_steps;
        dt = 0.5 * dt_try;
        continue;
      }
      if (result == odeint::fail) {
        ++traj_.rejected_steps;
        dt = dt_try;
        continue;
      }
      const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
      if (!xv.allFinite()) {
        stepper.reset();
        ++traj_.rejected_steps;
        dt = 0.5 * (t_try - t);
        continue;
      }
      // Land exactly on t_end rather than a rounding hair short of it.
      if (config_.t_end - t_try <= 1e-12 * std::max(1.0, config_.t_end)) t_try = config_.t_end;
      const double grown = dt_try;
      if (!accept(PhaseState<double>::unpacked(state_.chart, xv), t_try)) return;
      if (chart_changed_) {
        stepper.reset();
        chart_changed_ = false;
      }
      t = t_try;
      dt = grown;
    }
  }

  void run_midpoint() {
    double t = 0.0;
    double h = config_.fixed_step;
    while (t < config_.t_end) {
      const double step = step_limit(t, h);
      if (underflow(t, step)) return;
      const Eigen::VectorXd x0 = state_.packed();
      Eigen::VectorXd x1;
      bool converged = false;
      try {
        x1 = x0 + step * rhs(x0);
        for (int it = 0; it < 100; ++it) {
          const Eigen::VectorXd next = x0 + step * rhs(0.5 * (x0 + x1));
          const double change = (next - x1).lpNorm<Eigen::Infinity>();
          x1 = next;
          if (!x1.allFinite()) break;
          if (change <= 1e-15 * std::max(1.0, x1.lpNorm<Eigen::Infinity>())) {
            converged = true;
            break;
          }
        }
      } catch (const std::domain_error&) {
        converged = false;
      }
      if (!converged) {
        ++traj_.rejected_steps;
        h = 0.5 * step;
        continue;
      }
      double t_new = t + step;
      if (config_.t_end - t_new <= 1e-12 * std::max(1.0, config_.t_end)) t_new = config_.t_end;
      if (!accept(PhaseState<double>::unpacked(state_.chart, x1), t_new)) return;
      chart_changed_ = false;
      t = t_new;
      h = std::min(config_.fixed_step, 2.0 * h);
    }
  }

  const SWParams& params_;
  Curvature kappa_;
  IntegratorConfig config_;
  PhaseFunction h_;
  Trajectory traj_;
  PhaseState<double> state_;
  double t_prev_ = 0.0;
  double next_output_ = 0.0;
  bool logged_current_ = false;
  bool chart_changed_ = false;
};

}  // namespace

Eigen::VectorXd hamiltons_rhs(const PhaseState<double>& state, const SWParams& params,
                              Curvature kappa) {
  params.validate(state.dim());
  return rhs_from(hamiltonian_function(params, kappa), state);
}

std::string to_string(Method m) { return m == Method::RK45 ? "rk45" : "midpoint"; }

Method method_from_string(const std::string& name) {
  if (name == "rk45") return Method::RK45;
  if (name == "midpoint") return Method::Midpoint;
  throw ConfigError("unknown method '" + name + "' (expected rk45 or midpoint)");
}

void IntegratorConfig::validate() const {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(what) + " must be > 0");
  };
  positive(rel_tol, "rel_tol");
  positive(abs_tol, "abs_tol");
  positive(max_step, "max_step");
  positive(fixed_step, "fixed_step");
  positive(singularity_threshold, "singularity_threshold");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be >= 0");
  if (!(output_interval >= 0.0)) throw ConfigError("output_interval must be >= 0");
  if (!(min_health >= 0.0 && min_health <= switch_health))
    throw ConfigError("need 0 <= min_health <= switch_health");
}

Chart default_chart(Curvature kappa) {
  return kappa.value() > 0.0 ? Chart::Polar : Chart::Parallel;
}

double chart_health(const ChartPoint<double>& q, Curvature kappa) {
  try {
    check_domain(q, kappa, 0.0);
  } catch (const ChartDomainError&) {
    return 0.0;
  }
  double health = 1.0;
  if (q.chart == Chart::Parallel) {
    for (int l = 0; l < q.dim(); ++l) health = std::min(health, std::abs(cos_k(kappa, q.coords(l))));
  } else {
    health = std::min(health, std::abs(sin_k(kappa, q.coords(0))));
    for (int l = 1; l < q.dim(); ++l) health = std::min(health, std::abs(std::sin(q.coords(l))));
  }
  return health;
}

std::string to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Completed: return "completed";
    case TrajectoryStatus::SingularityHalt: return "singularity_halt";
    case TrajectoryStatus::ChartEscape: return "chart_escape";
    case TrajectoryStatus::StepUnderflow: return "step_underflow";
  }
  return "unknown";
}

std::vector<std::string> invariant_names(int n) {
  std::vector<std::string> names{"H"};
  for (const auto& id : integral_ids(n)) names.push_back(id.name());
  return names;
}

Eigen::VectorXd invariant_values(const PhaseState<double>& state, const SWParams& params,
                                 Curvature kappa) {
  const auto ids = integral_ids(state.dim());
  Eigen::VectorXd out(static_cast<Eigen::Index>(ids.size()) + 1);
  out(0) = hamiltonian(state, params, kappa);
  for (std::size_t k = 0; k < ids.size(); ++k)
    out(static_cast<Eigen::Index>(k) + 1) = integral(ids[k], state, params, kappa);
  return out;
}

Trajectory integrate(const PhaseState<double>& initial, const SWParams& params, Curvature kappa,
                     const IntegratorConfig& config) {
  config.validate();
  params.validate(initial.dim());
  return Integrator(initial, params, kappa, config).run();
}

DriftReport drift_report(const Trajectory& traj, int bracket_samples) {
  if (traj.states.empty()) throw std::invalid_argument("drift_report: empty trajectory");
  DriftReport report;
  report.logged_states = traj.states.size();
  const Eigen::VectorXd& first = traj.invariants.front();
  for (std::size_t k = 0; k < traj.invariant_names.size(); ++k) {
    InvariantDrift d;
    d.name = traj.invariant_names[k];
    d.initial = first(static_cast<Eigen::Index>(k));
    const double scale = std::max(std::abs(d.initial), 1e-12);
    for (std::size_t s = 0; s < traj.invariants.size(); ++s) {
      const double abs_drift = std::abs(traj.invariants[s](static_cast<Eigen::Index>(k)) - d.initial);
      if (!(abs_drift <= d.max_abs_drift)) {
        d.max_abs_drift = std::isnan(abs_drift) ? std::numeric_limits<double>::infinity() : abs_drift;
        d.time_of_max = traj.times[s];
        d.index_of_max = s;
      }
    }
    d.max_rel_drift = d.max_abs_drift / scale;
    report.max_rel_drift = worst_of(report.max_rel_drift, d.max_rel_drift);
    report.invariants.push_back(std::move(d));
  }

  const Curvature kappa(traj.kappa);
  const auto ids = integral_ids(traj.n);
  const PhaseFunction h = hamiltonian_function(traj.params, kappa);
  std::vector<PhaseFunction> integrals;
  for (const auto& id : ids) integrals.push_back(integral_function(id, traj.params, kappa));

  const std::size_t count = traj.states.size();
  const std::size_t samples =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(bracket_samples, 0)));
  for (std::size_t k = 0; k < samples; ++k) {
    const std::size_t idx = samples == 1 ? 0 : k * (count - 1) / (samples - 1);
    const PhaseState<double>& state = traj.states[idx];
    try {
      const Eigen::VectorXd gh = gradient(h, state);
      for (const auto& f : integrals)
        report.max_bracket_residual = worst_of(
            report.max_bracket_residual, std::abs(bracket_from_gradients(gradient(f, state), gh)));
      report.max_sum_rule_residual =
          worst_of(report.max_sum_rule_residual, sum_rule_residual(state, traj.params, kappa));
    } catch (const std::domain_error&) {
      report.max_bracket_residual = std::numeric_limits<double>::infinity();
    }
    ++report.bracket_samples;
  }
  return report;
}

double time_reversal_error(const PhaseState<double>& initial, const SWParams& params,
                           Curvature kappa, const IntegratorConfig& config) {
  const Trajectory forward = integrate(initial, params, kappa, config);
  if (!forward.completed()) return std::numeric_limits<double>::infinity();
  PhaseState<double> flipped = forward.states.back();
  flipped.p = -flipped.p;
  const Trajectory back = integrate(flipped, params, kappa, config);
  if (!back.completed()) return std::numeric_limits<double>::infinity();
  PhaseState<double> end = back.states.back();
  end.p = -end.p;
  end = convert_state(end, initial.chart, kappa);
  return (end.packed() - initial.packed()).lpNorm<Eigen::Infinity>();
}

std::vector<PhaseState<double>> bounded_initial_states(int n, Curvature kappa,
                                                       const SWParams& params, Chart chart,
                                                       int count, std::uint64_t seed,
                                                       double max_energy) {
  params.validate(n);
  if ((params.beta.array() <= 0.0).any())
    throw ConfigError("bounded sampling needs every beta_i > 0");
  StateSampler sampler(n, kappa, chart, seed);
  sampler.set_momentum_scale(0.5);
  std::vector<PhaseState<double>> out;
  long attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100000L * std::max(count, 1))
      throw ConfigError("no bounded initial states found below the energy cap");
    PhaseState<double> s = sampler.next();
    const double cap = kappa.value() < 0.0 ? std::min(max_energy, 0.9 * params.beta(0)) : max_energy;
    if (!(hamiltonian(s, params, kappa) < cap)) continue;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace swk
