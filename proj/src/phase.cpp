#include "swk/phase.hpp"

namespace swk {

RealizedGenerator realize_parallel(const GeneratorId& id, int n, Curvature kappa) {
  id.validate(n);
  return {id, Chart::Parallel,
          PhaseFunction::make(id.name(), [id, kappa](const auto& s) {
            return parallel_generator(id, s, kappa);
          })};
}

RealizedGenerator realize_polar(const GeneratorId& id, int n, Curvature kappa) {
  id.validate(n);
  return {id, Chart::Polar, PhaseFunction::make(id.name(), [id, kappa](const auto& s) {
            return polar_generator(id, s, kappa);
          })};
}

RealizedGenerator realize(const GeneratorId& id, int n, Curvature kappa, Chart chart) {
  return chart == Chart::Parallel ? realize_parallel(id, n, kappa) : realize_polar(id, n, kappa);
}

std::vector<RealizedGenerator> realize_all(int n, Curvature kappa, Chart chart) {
  std::vector<RealizedGenerator> out;
  for (const auto& id : all_generators(n)) out.push_back(realize(id, n, kappa, chart));
  return out;
}

PhaseState<double> convert_state(const PhaseState<double>& state, Chart target, Curvature kappa) {
  if (state.chart == target) return state;
  const ChartPoint<double> from = state.point();
  const Eigen::VectorXd qdot = velocities_from_momenta(from, state.p, kappa);

  ChartPoint<Dual> seeded{state.chart, VectorX<Dual>(state.dim())};
  for (int i = 0; i < state.dim(); ++i) seeded.coords(i) = Dual(state.q(i), qdot(i));
  const ChartPoint<Dual> moved = convert_point(seeded, target, kappa);

  ChartPoint<double> to{target, Eigen::VectorXd(state.dim())};
  Eigen::VectorXd to_dot(state.dim());
  for (int i = 0; i < state.dim(); ++i) {
    to.coords(i) = moved.coords(i).val;
    to_dot(i) = moved.coords(i).eps;
  }
  return {target, to.coords, momenta_from_velocities(to, to_dot, kappa)};
}

}  // namespace swk
