#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "oracles.hpp"
#include "swk/dynamics.hpp"
#include "swk/sampling.hpp"

using swk::Chart;
using swk::Curvature;
using swk::IntegratorConfig;
using swk::PhaseState;
using swk::SWParams;
using std::numbers::pi;

namespace {

SWParams params_of(std::initializer_list<double> values) {
  Eigen::VectorXd b(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) b(i++) = v;
  return SWParams(b);
}

bool all_finite(const swk::Trajectory& traj) {
  for (std::size_t s = 0; s < traj.states.size(); ++s)
    if (!traj.states[s].packed().allFinite() || !traj.invariants[s].allFinite()) return false;
  return true;
}

}  // namespace

TEST_CASE("method and config parsing") {
  CHECK(swk::method_from_string("rk45") == swk::Method::RK45);
  CHECK(swk::method_from_string("midpoint") == swk::Method::Midpoint);
  CHECK(swk::to_string(swk::Method::Midpoint) == "midpoint");
  CHECK_THROWS_AS(swk::method_from_string("euler"), swk::ConfigError);
  IntegratorConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), swk::ConfigError);
  cfg = IntegratorConfig{};
  cfg.t_end = -1.0;
  CHECK_THROWS_AS(cfg.validate(), swk::ConfigError);
  CHECK(swk::default_chart(Curvature(1)) == Chart::Polar);
  CHECK(swk::default_chart(Curvature(0)) == Chart::Parallel);
  CHECK(swk::default_chart(Curvature(-1)) == Chart::Parallel);
  CHECK(swk::invariant_names(2) == std::vector<std::string>{"H", "I_0_1", "I_0_2", "I_1_2"});
}

TEST_CASE("Hamilton's equations") {
  const PhaseState<double> s{Chart::Parallel, Eigen::Vector2d(0.4, -0.7), Eigen::Vector2d(1.2, 0.3)};
  const Eigen::VectorXd free = swk::hamiltons_rhs(s, params_of({0, 0, 0}), Curvature(0));
  CHECK((free.head(2) - s.p).norm() == 0.0);
  CHECK(free.tail(2).norm() == 0.0);

  const double b0 = 1.7;
  const Eigen::VectorXd osc = swk::hamiltons_rhs(s, params_of({b0, 0, 0}), Curvature(0));
  CHECK((osc.tail(2) + 2 * b0 * s.q).cwiseAbs().maxCoeff() < 1e-15);

  const SWParams b = params_of({0.8, 1.2, 0.5, 0.9});
  for (double k : {-1.0, 0.0, 1.0})
    for (Chart chart : {Chart::Parallel, Chart::Polar}) {
      swk::StateSampler sampler(3, Curvature(k), chart, 11);
      for (int t = 0; t < 50; ++t) {
        const auto st = sampler.next();
        auto h = [&](const Eigen::VectorXd& x) {
          return Eigen::VectorXd::Constant(
              1, swk::hamiltonian(PhaseState<double>::unpacked(chart, x), b, Curvature(k)));
        };
        const Eigen::VectorXd grad = oracle::jacobian_fd5(h, st.packed(), 1e-4).row(0).transpose();
        Eigen::VectorXd expected(6);
        expected << grad.tail(3), -grad.head(3);
        const Eigen::VectorXd rhs = swk::hamiltons_rhs(st, b, Curvature(k));
        REQUIRE((rhs - expected).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
      }
    }
}

TEST_CASE("geodesics on the sphere are great circles") {
  const Curvature k(1);
  const PhaseState<double> start{Chart::Polar, Eigen::Vector3d(0.8, 1.1, 0.4),
                                 Eigen::Vector3d(0.3, -0.5, 0.2)};
  IntegratorConfig cfg;
  cfg.t_end = 20.0;
  const swk::Trajectory traj = swk::integrate(start, params_of({0, 0, 0, 0}), k, cfg);
  REQUIRE(traj.completed());
  CHECK(all_finite(traj));

  // Plane through the origin spanned by the initial point and velocity.
  const Eigen::VectorXd s0 = swk::to_weierstrass(start.point(), k);
  const Eigen::VectorXd v0 = swk::weierstrass_velocity(
      start.point(), swk::velocities_from_momenta(start.point(), start.p, k), k);
  Eigen::MatrixXd basis(4, 2);
  basis << s0, v0;
  const Eigen::MatrixXd q = basis.householderQr().householderQ() * Eigen::MatrixXd::Identity(4, 2);
  double off_plane = 0.0;
  for (const auto& st : traj.states) {
    const Eigen::VectorXd s = swk::to_weierstrass(st.point(), k);
    off_plane = std::max(off_plane, (s - q * (q.transpose() * s)).norm());
  }
  CHECK(off_plane < 1e-8);

  // The angular momentum bivector is constant.
  double worst = 0.0;
  for (const auto& id : swk::all_generators(3)) {
    const double initial = swk::generator_value(id, start, k);
    for (const auto& st : traj.states)
      worst = std::max(worst, std::abs(swk::generator_value(id, st, k) - initial));
  }
  CHECK(worst < 1e-8);
  CHECK(swk::drift_report(traj).max_rel_drift < 1e-8);
}

TEST_CASE("flat SW system keeps its integrals") {
  const SWParams b = params_of({1, 1, 1});
  const PhaseState<double> start{Chart::Parallel, Eigen::Vector2d(0.9, 1.3), Eigen::Vector2d(0.4, -0.6)};
  IntegratorConfig cfg;
  cfg.t_end = 100.0;
  const swk::Trajectory traj = swk::integrate(start, b, Curvature(0), cfg);
  REQUIRE(traj.completed());
  const swk::DriftReport drift = swk::drift_report(traj);
  for (const auto& d : drift.invariants) {
    CHECK(d.max_rel_drift < 1e-7);
  }
  CHECK(drift.max_sum_rule_residual < 1e-9);
  CHECK(drift.max_bracket_residual < 1e-9);

  // The curved code at κ = 0 agrees with the independent flat formulas along the run.
  for (const auto& st : traj.states) {
    REQUIRE(std::abs(swk::hamiltonian(st, b, Curvature(0)) - swk::flat::hamiltonian(st.q, st.p, b)) <
            1e-12);
  }
}

TEST_CASE("equilibrium is stationary") {
  const double b0 = 2.0, b1 = 0.5, b2 = 1.5;
  const Eigen::Vector2d q(std::pow(b1 / b0, 0.25), std::pow(b2 / b0, 0.25));
  const PhaseState<double> rest{Chart::Parallel, q, Eigen::Vector2d::Zero()};
  const SWParams b = params_of({b0, b1, b2});
  CHECK(swk::hamiltons_rhs(rest, b, Curvature(0)).cwiseAbs().maxCoeff() < 1e-13);
  IntegratorConfig cfg;
  cfg.t_end = 10.0;
  const swk::Trajectory traj = swk::integrate(rest, b, Curvature(0), cfg);
  REQUIRE(traj.completed());
  for (const auto& st : traj.states) REQUIRE((st.q - q).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(swk::drift_report(traj).max_rel_drift < 1e-12);
}

TEST_CASE("drift report negative control") {
  const SWParams b = params_of({1, 0.3, 0.6});
  const PhaseState<double> start{Chart::Parallel, Eigen::Vector2d(0.7, 0.9), Eigen::Vector2d(0.2, -0.1)};
  IntegratorConfig cfg;
  cfg.t_end = 5.0;
  cfg.output_interval = 0.1;
  swk::Trajectory traj = swk::integrate(start, b, Curvature(0), cfg);
  REQUIRE(traj.completed());
  REQUIRE(traj.states.size() > 20);
  CHECK(swk::drift_report(traj).max_rel_drift < 1e-8);

  const std::size_t mid = traj.states.size() / 2;
  traj.states[mid].p(0) += 0.05;
  traj.invariants[mid] = swk::invariant_values(traj.states[mid], b, Curvature(0));
  const swk::DriftReport drift = swk::drift_report(traj);
  CHECK(drift.max_rel_drift > 1e-3);
  CHECK(drift.invariants.front().index_of_max == mid);
  CHECK(drift.invariants.front().time_of_max == traj.times[mid]);

  swk::Trajectory empty;
  CHECK_THROWS_AS(swk::drift_report(empty), std::invalid_argument);
}

TEST_CASE("time reversal") {
  const SWParams b = params_of({1, 0.02, 0.03, 0.05});
  IntegratorConfig cfg;
  cfg.t_end = 20.0;
  for (double k : {-1.0, 0.0, 1.0}) {
    const Chart chart = swk::default_chart(Curvature(k));
    const auto starts = swk::bounded_initial_states(3, Curvature(k), b, chart, 2, 3, 2.0);
    for (const auto& st : starts) REQUIRE(swk::time_reversal_error(st, b, Curvature(k), cfg) < 1e-6);
  }
}

TEST_CASE("bounded initial states") {
  const SWParams b = params_of({1, 0.02, 0.03, 0.05});
  for (double k : {-1.0, 0.0, 1.0}) {
    const auto states = swk::bounded_initial_states(3, Curvature(k), b, Chart::Parallel, 10, 5, 3.0);
    CHECK(states.size() == 10);
    for (const auto& st : states) {
      const double h = swk::hamiltonian(st, b, Curvature(k));
      CHECK(h < 3.0);
      if (k < 0) CHECK(h < 0.9);
    }
  }
  CHECK_THROWS_AS(swk::bounded_initial_states(2, Curvature(1), params_of({1, 0, 1}), Chart::Polar, 1, 1),
                  swk::ConfigError);
}

TEST_CASE("zero duration and the midpoint method") {
  const SWParams b = params_of({1, 0.3, 0.6});
  const PhaseState<double> start{Chart::Parallel, Eigen::Vector2d(0.7, 0.9), Eigen::Vector2d(0.2, -0.1)};
  IntegratorConfig cfg;
  cfg.t_end = 0.0;
  const auto still = swk::integrate(start, b, Curvature(0.5), cfg);
  CHECK(still.completed());
  CHECK(still.states.size() == 1);

  cfg.t_end = 10.0;
  cfg.method = swk::Method::Midpoint;
  const auto mid = swk::integrate(start, b, Curvature(0.5), cfg);
  REQUIRE(mid.completed());
  CHECK(mid.times.back() == doctest::Approx(10.0));
  CHECK(swk::drift_report(mid).max_rel_drift < 1e-4);
}

TEST_CASE("chart escape is switched or halted without NaN") {
  // Geodesic along a₂ heading for the parallel chart boundary |a₂| = π/2.
  const Curvature k(1);
  const PhaseState<double> start{Chart::Parallel, Eigen::Vector2d(0.3, 1.2), Eigen::Vector2d(0.0, 1.0)};
  const SWParams free = params_of({0, 0, 0});
  IntegratorConfig cfg;
  cfg.t_end = 3.0;
  cfg.allow_chart_switch = false;
  const auto halted = swk::integrate(start, free, k, cfg);
  CHECK(halted.status == swk::TrajectoryStatus::ChartEscape);
  CHECK(all_finite(halted));
  CHECK(halted.times.back() < 3.0);

  cfg.allow_chart_switch = true;
  const auto switched = swk::integrate(start, free, k, cfg);
  CHECK(switched.completed());
  CHECK(switched.chart_switches >= 1);
  CHECK(all_finite(switched));
  CHECK(swk::drift_report(switched).max_rel_drift < 1e-8);
}

TEST_CASE("attractive wall halts with diagnostics") {
  // β₁ < 0 pulls the particle into the wall a₁ = 0.
  const SWParams b = params_of({0.5, -0.5, 1.0});
  const PhaseState<double> start{Chart::Parallel, Eigen::Vector2d(0.3, 0.8), Eigen::Vector2d(0.0, 0.0)};
  IntegratorConfig cfg;
  cfg.t_end = 5.0;
  const auto traj = swk::integrate(start, b, Curvature(0), cfg);
  CHECK(traj.status == swk::TrajectoryStatus::SingularityHalt);
  CHECK(traj.singular_index == 1);
  CHECK(all_finite(traj));
  CHECK_FALSE(traj.message.empty());
  CHECK(std::abs(traj.last_good().q(0)) > 0.0);
}
