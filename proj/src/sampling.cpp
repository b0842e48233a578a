#include "swk/sampling.hpp"

#include <algorithm>
#include <numbers>

namespace swk {

StateSampler::StateSampler(int n, Curvature kappa, Chart chart, std::uint64_t seed, double margin)
    : n_(n), kappa_(kappa), chart_(chart), margin_(margin), rng_(seed) {
  if (n < 2) throw ConfigError("N must be >= 2");
}

bool StateSampler::acceptable(const PhaseState<double>& s) const {
  constexpr double ratio_floor = 0.1;
  try {
    check_domain(s.point(), kappa_, margin_);
  } catch (const ChartDomainError&) {
    return false;
  }
  const Eigen::VectorXd w = to_weierstrass(s.point(), kappa_);
  // Centrifugal ratios sⱼ²/sᵢ² stay below ~1/ratio_floor².
  const Eigen::VectorXd a = w.tail(n_).cwiseAbs();
  return w.cwiseAbs().minCoeff() > margin_ && a.minCoeff() >= ratio_floor * a.maxCoeff();
}

PhaseState<double> StateSampler::next() {
  using std::numbers::pi;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  // Quarter period of Cκ, capped so flat and hyperbolic draws stay O(1).
  const double quarter = pi / (2.0 * std::sqrt(std::max(kappa_.value(), 1.0)));
  const double angle_gap = 0.3;

  for (;;) {
    PhaseState<double> s{chart_, Eigen::VectorXd(n_), Eigen::VectorXd(n_)};
    if (chart_ == Chart::Parallel) {
      for (int i = 0; i < n_; ++i) {
        const double mag = quarter * (0.1 + 0.6 * unit(rng_));
        s.q(i) = unit(rng_) < 0.5 ? -mag : mag;
      }
    } else {
      s.q(0) = quarter * (0.25 + 0.55 * unit(rng_));
      for (int l = 2; l <= n_; ++l) {
        // An angle strictly inside a random quadrant; θ_N ranges over all
        // four, the others over (0, π).
        const int quadrants = l == n_ ? 4 : 2;
        const auto quadrant = static_cast<int>(unit(rng_) * quadrants) % quadrants;
        double theta = angle_gap + (pi / 2.0 - 2.0 * angle_gap) * unit(rng_);
        theta += quadrant * pi / 2.0;
        if (theta > pi) theta -= 2.0 * pi;
        s.q(l - 1) = theta;
      }
    }
    if (!acceptable(s)) continue;
    // Orthonormal-frame velocity components uniform in [-1, 1], so the
    // kinetic energy stays O(1) however small the metric factors are.
    const Eigen::VectorXd g = metric_diagonal(s.point(), kappa_);
    for (int i = 0; i < n_; ++i) s.p(i) = momentum_scale_ * std::sqrt(g(i)) * sym(rng_);
    return s;
  }
}

std::vector<PhaseState<double>> StateSampler::take(int count) {
  std::vector<PhaseState<double>> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) out.push_back(next());
  return out;
}

}  // namespace swk
