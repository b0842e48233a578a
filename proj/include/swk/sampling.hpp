#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "swk/phase_state.hpp"

namespace swk {

/// Reproducible generator of generic phase states.
///
/// Points keep every chart denominator, every Weierstrass coordinate sᵢ and
/// s₀ at least `margin` away from zero; coordinates are drawn from
/// moderate ranges so that 1/sin and 1/Sκ factors stay well conditioned.
/// Momenta are √gᵢᵢ·uᵢ with uᵢ uniform in [-1, 1] (times the momentum scale).
class StateSampler {
 public:
  StateSampler(int n, Curvature kappa, Chart chart, std::uint64_t seed, double margin = 1e-2);

  PhaseState<double> next();
  std::vector<PhaseState<double>> take(int count);

  void set_momentum_scale(double scale) { momentum_scale_ = scale; }

 private:
  bool acceptable(const PhaseState<double>& s) const;

  int n_;
  Curvature kappa_;
  Chart chart_;
  double margin_;
  double momentum_scale_ = 1.0;
  std::mt19937_64 rng_;
};

}  // namespace swk
