#include "swk/poisson.hpp"

#include <algorithm>

#include "swk/liealg.hpp"
#include "swk/residual.hpp"
#include "swk/sampling.hpp"

namespace swk {

Eigen::VectorXd gradient(const PhaseFunction& f, const PhaseState<double>& state) {
  const int n = state.dim();
  PhaseState<Dual> seeded = state.cast<Dual>();
  Eigen::VectorXd grad(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    Dual& slot = k < n ? seeded.q(k) : seeded.p(k - n);
    slot.eps = 1.0;
    grad(k) = f(seeded).eps;
    slot.eps = 0.0;
  }
  return grad;
}

Eigen::VectorXd gradient_fd(const RealPhaseFunction& f, const PhaseState<double>& state, double h) {
  const int n = state.dim();
  const Eigen::VectorXd x = state.packed();
  Eigen::VectorXd grad(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    const double step = h * std::max(1.0, std::abs(x(k)));
    Eigen::VectorXd xp = x, xm = x;
    xp(k) += step;
    xm(k) -= step;
    grad(k) = (f(PhaseState<double>::unpacked(state.chart, xp)) -
               f(PhaseState<double>::unpacked(state.chart, xm))) /
              (2.0 * step);
  }
  return grad;
}

double bracket_from_gradients(const Eigen::VectorXd& grad_f, const Eigen::VectorXd& grad_g) {
  const auto n = grad_f.size() / 2;
  return grad_f.head(n).dot(grad_g.tail(n)) - grad_g.head(n).dot(grad_f.tail(n));
}

double bracket(const PhaseFunction& f, const PhaseFunction& g, const PhaseState<double>& state) {
  return bracket_from_gradients(gradient(f, state), gradient(g, state));
}

double bracket_fd(const RealPhaseFunction& f, const RealPhaseFunction& g,
                  const PhaseState<double>& state, double h) {
  return bracket_from_gradients(gradient_fd(f, state, h), gradient_fd(g, state, h));
}

double jacobi_residual(const PhaseFunction& f, const PhaseFunction& g, const PhaseFunction& h,
                       const PhaseState<double>& state) {
  auto inner = [](const PhaseFunction& a, const PhaseFunction& b) -> RealPhaseFunction {
    return [a, b](const PhaseState<double>& s) { return bracket(a, b, s); };
  };
  auto real = [](const PhaseFunction& a) -> RealPhaseFunction {
    return [a](const PhaseState<double>& s) { return a(s); };
  };
  return bracket_fd(real(f), inner(g, h), state) + bracket_fd(real(g), inner(h, f), state) +
         bracket_fd(real(h), inner(f, g), state);
}

AlgebraReport verify_algebra(int n, Curvature kappa, Chart chart, int trials, std::uint64_t seed,
                             double tolerance) {
  const StructureConstants sc(n, kappa);
  const auto gens = realize_all(n, kappa, chart);
  const auto& basis = sc.basis();
  const std::size_t dim = basis.size();

  AlgebraReport report;
  report.n = n;
  report.kappa = kappa.value();
  report.chart = chart;
  report.trials = trials;
  report.tolerance = tolerance;

  // Residuals for both candidate signs, worst case over states.
  std::vector<double> plus(dim * dim, 0.0), minus(dim * dim, 0.0);
  StateSampler sampler(n, kappa, chart, seed);
  for (int t = 0; t < trials; ++t) {
    const PhaseState<double> state = sampler.next();
    std::vector<Eigen::VectorXd> grads;
    Eigen::VectorXd values(static_cast<Eigen::Index>(dim));
    grads.reserve(dim);
    for (std::size_t a = 0; a < dim; ++a) {
      grads.push_back(gradient(gens[a].function, state));
      values(static_cast<Eigen::Index>(a)) = gens[a](state);
    }
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a + 1; b < dim; ++b) {
        const double pb = bracket_from_gradients(grads[a], grads[b]);
        double expected = 0.0;
        for (const auto& term : sc.bracket(basis[a], basis[b]))
          expected += term.coefficient * values(generator_index(term.id, n));
        plus[a * dim + b] = worst_of(plus[a * dim + b], std::abs(pb - expected));
        minus[a * dim + b] = worst_of(minus[a * dim + b], std::abs(pb + expected));
      }
  }

  const double worst_plus = *std::max_element(plus.begin(), plus.end());
  const double worst_minus = *std::max_element(minus.begin(), minus.end());
  report.sign = worst_plus <= worst_minus ? 1 : -1;
  const auto& chosen = report.sign > 0 ? plus : minus;
  report.max_residual = std::min(worst_plus, worst_minus);
  report.opposite_sign_residual = std::max(worst_plus, worst_minus);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a + 1; b < dim; ++b)
      report.pairs.push_back({basis[a].name(), basis[b].name(), chosen[a * dim + b]});
  report.passed = report.max_residual <= tolerance;
  return report;
}

CommutationReport verify_commutes_with(const PhaseFunction& f,
                                       const std::vector<RealizedGenerator>& generators,
                                       const std::vector<PhaseState<double>>& states,
                                       double tolerance) {
  CommutationReport report;
  report.function = f.name();
  report.tolerance = tolerance;
  std::vector<double> worst(generators.size(), 0.0);
  for (const auto& state : states) {
    const Eigen::VectorXd gf = gradient(f, state);
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const double r =
          std::abs(bracket_from_gradients(gradient(generators[g].function, state), gf));
      worst[g] = worst_of(worst[g], r);
    }
  }
  for (std::size_t g = 0; g < generators.size(); ++g) {
    report.residuals.push_back({generators[g].id.name(), f.name(), worst[g]});
    report.max_residual = worst_of(report.max_residual, worst[g]);
  }
  report.passed = report.max_residual <= tolerance;
  return report;
}

}  // namespace swk
