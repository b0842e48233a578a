#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "swk/phase.hpp"
#include "swk/phase_state.hpp"

namespace swk {

/// Exact gradient (∂f/∂q₁..∂f/∂q_N, ∂f/∂p₁..∂f/∂p_N) from 2N dual evaluations.
Eigen::VectorXd gradient(const PhaseFunction& f, const PhaseState<double>& state);

using RealPhaseFunction = std::function<double(const PhaseState<double>&)>;

/// Central-difference gradient with step h·max(1, |x|) per coordinate.
Eigen::VectorXd gradient_fd(const RealPhaseFunction& f, const PhaseState<double>& state,
                            double h = 1e-6);

/// Σᵢ (∂f/∂qᵢ ∂g/∂pᵢ - ∂g/∂qᵢ ∂f/∂pᵢ) from packed gradients.
double bracket_from_gradients(const Eigen::VectorXd& grad_f, const Eigen::VectorXd& grad_g);

/// Canonical Poisson bracket {f, g} at a state, exact derivatives.
double bracket(const PhaseFunction& f, const PhaseFunction& g, const PhaseState<double>& state);

/// {f, g} with finite-difference derivatives; works for any real function,
/// including bracket values themselves (used for nested brackets).
double bracket_fd(const RealPhaseFunction& f, const RealPhaseFunction& g,
                  const PhaseState<double>& state, double h = 1e-5);

/// {f, {g, h}} + {g, {h, f}} + {h, {f, g}}: inner brackets exact, outer by
/// finite differences of the inner bracket values.
double jacobi_residual(const PhaseFunction& f, const PhaseFunction& g, const PhaseFunction& h,
                       const PhaseState<double>& state);

struct PairResidual {
  std::string a;
  std::string b;
  double residual = 0.0;
};

/// Outcome of checking that realized generators reproduce the so_κ(N+1)
/// brackets. `sign` is the homomorphism sign s with {X̃,Ỹ} = s·[X,Y]~,
/// chosen as the one minimizing the worst residual over all pairs.
struct AlgebraReport {
  int n = 0;
  double kappa = 0.0;
  Chart chart = Chart::Parallel;
  int trials = 0;
  int sign = 1;
  double max_residual = 0.0;
  double opposite_sign_residual = 0.0;
  double tolerance = 1e-10;
  bool passed = false;
  std::vector<PairResidual> pairs;  // one per unordered pair, chosen sign
};

AlgebraReport verify_algebra(int n, Curvature kappa, Chart chart, int trials, std::uint64_t seed,
                             double tolerance = 1e-10);

struct CommutationReport {
  std::string function;
  std::vector<PairResidual> residuals;  // {X̃, f} per generator
  double max_residual = 0.0;
  double tolerance = 1e-10;
  bool passed = false;
};

/// max over states of |{X̃, f}| for each generator X̃.
CommutationReport verify_commutes_with(const PhaseFunction& f,
                                       const std::vector<RealizedGenerator>& generators,
                                       const std::vector<PhaseState<double>>& states,
                                       double tolerance = 1e-10);

}  // namespace swk
