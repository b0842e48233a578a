#pragma once

#include <cmath>

#include "swk/geometry.hpp"
#include "swk/liealg.hpp"
#include "swk/phase_state.hpp"

namespace swk {

/// Canonical momenta p = g·q̇ (the metric is diagonal in both charts).
template <typename Scalar>
VectorX<Scalar> momenta_from_velocities(const ChartPoint<Scalar>& q, const VectorX<Scalar>& qdot,
                                        Curvature kappa) {
  return metric_diagonal(q, kappa).cwiseProduct(qdot);
}

template <typename Scalar>
VectorX<Scalar> velocities_from_momenta(const ChartPoint<Scalar>& q, const VectorX<Scalar>& p,
                                        Curvature kappa) {
  return p.cwiseQuotient(metric_diagonal(q, kappa));
}

/// Free Hamiltonian T = ½ Σ pᵢ²/g_ii:
///   parallel: 2T = Σ_{i<N} pᵢ² / ∏_{l>i} Cκ²(a_l) + p_N²
///   polar:    2T = π₁² + (π₂² + Σ_{i≥3} πᵢ² / ∏_{l=2}^{i-1} sin²θ_l) / Sκ²(r)
template <typename Scalar>
Scalar kinetic_energy(const PhaseState<Scalar>& state, Curvature kappa) {
  const VectorX<Scalar> g = metric_diagonal(state.point(), kappa);
  Scalar two_t(0.0);
  for (int i = 0; i < state.dim(); ++i) two_t += state.p(i) * state.p(i) / g(i);
  return two_t * 0.5;
}

namespace phase_detail {

// ∏_{l=from}^{to} v(l) over 1-based indices; empty product is 1.
template <typename Scalar>
Scalar prod(const VectorX<Scalar>& v, int from, int to) {
  Scalar out(1.0);
  for (int l = from; l <= to; ++l) out = out * v(l);
  return out;
}

}  // namespace phase_detail

/// Generator realization in parallel canonical coordinates (a, p).
///
///   P̃ᵢ  = ∏_{k≤i} Cκ(a_k) Cκ(aᵢ) pᵢ
///         + κ Sκ(aᵢ) Σ_{s≤i} Sκ(a_s) ∏_{m≤s} Cκ(a_m) / ∏_{l=s}^{i} Cκ(a_l) p_s
///   J̃ᵢⱼ = Sκ(aᵢ) Cκ(aⱼ) ∏_{s=i+1}^{j} Cκ(a_s) pⱼ - Cκ(aᵢ) Sκ(aⱼ) / ∏_{k=i+1}^{j} Cκ(a_k) pᵢ
///         + κ Sκ(aᵢ) Sκ(aⱼ) Σ_{s=i+1}^{j} Sκ(a_s) ∏_{m=i+1}^{s} Cκ(a_m) / ∏_{l=s}^{j} Cκ(a_l) p_s
///
/// The s = i term of the P̃ᵢ sum combines with the leading term through
/// Cκ² + κSκ² = 1, which is what reduces P̃₁ to p₁.
template <typename Scalar>
Scalar parallel_generator(const GeneratorId& id, const PhaseState<Scalar>& state,
                          Curvature kappa) {
  using phase_detail::prod;
  const int n = state.dim();
  const double k = kappa.value();
  // 1-based copies so the code follows the index ranges above.
  VectorX<Scalar> c(n + 1), s(n + 1), p(n + 1);
  for (int l = 1; l <= n; ++l) {
    c(l) = cos_k(kappa, state.q(l - 1));
    s(l) = sin_k(kappa, state.q(l - 1));
    p(l) = state.p(l - 1);
  }
  if (id.is_translation()) {
    const int i = id.i;
    Scalar sum(0.0);
    for (int t = 1; t <= i; ++t) sum += s(t) * prod(c, 1, t) / prod(c, t, i) * p(t);
    return prod(c, 1, i) * c(i) * p(i) + k * s(i) * sum;
  }
  const int i = id.i, j = id.j;
  Scalar sum(0.0);
  for (int t = i + 1; t <= j; ++t) sum += s(t) * prod(c, i + 1, t) / prod(c, t, j) * p(t);
  return s(i) * c(j) * prod(c, i + 1, j) * p(j) - c(i) * s(j) / prod(c, i + 1, j) * p(i) +
         k * s(i) * s(j) * sum;
}

/// Generator realization in geodesic polar canonical coordinates (θ, π),
/// θ = (r, θ₂..θ_N). Four families: P̃ᵢ (i<N), P̃_N, J̃ᵢⱼ (j<N), J̃ᵢ_N.
/// Divisions by tan θ and Tκ(r) are written as cos/sin and Cκ/Sκ.
template <typename Scalar>
Scalar polar_generator(const GeneratorId& id, const PhaseState<Scalar>& state, Curvature kappa) {
  using phase_detail::prod;
  using std::cos;
  using std::sin;
  const int n = state.dim();
  // sn(l), cs(l) = sin θ_l, cos θ_l for l = 2..N; slot 1 unused.
  VectorX<Scalar> sn(n + 1), cs(n + 1), pi(n + 1);
  sn(0) = sn(1) = cs(0) = cs(1) = Scalar(1.0);
  for (int l = 2; l <= n; ++l) {
    sn(l) = sin(state.q(l - 1));
    cs(l) = cos(state.q(l - 1));
  }
  for (int l = 1; l <= n; ++l) pi(l) = state.p(l - 1);
  const Scalar inv_tr = cos_k(kappa, state.q(0)) / sin_k(kappa, state.q(0));  // 1/Tκ(r)

  if (id.is_translation() && id.i < n) {
    const int i = id.i;
    const Scalar cot = cs(i + 1) / sn(i + 1);
    Scalar sum(0.0);
    for (int t = 2; t <= i + 1; ++t) sum += prod(sn, t, i + 1) * cs(t) * pi(t) / prod(sn, 2, t);
    return prod(sn, 2, i + 1) * cot * pi(1) + inv_tr * cot * sum -
           inv_tr * pi(i + 1) / prod(sn, 2, i + 1);
  }
  if (id.is_translation()) {
    Scalar sum(0.0);
    for (int t = 2; t <= n; ++t) sum += prod(sn, t, n) * cs(t) / prod(sn, 2, t) * pi(t);
    return prod(sn, 2, n) * pi(1) + inv_tr * sum;
  }
  const int i = id.i, j = id.j;
  if (j < n) {
    Scalar sum(0.0);
    for (int t = i + 1; t <= j; ++t) sum += prod(sn, t, j) * cs(t) / prod(sn, i + 1, t) * pi(t);
    return sn(i + 1) * cs(j + 1) * prod(sn, i + 1, j) * pi(i + 1) -
           cs(i + 1) * sn(j + 1) / prod(sn, i + 1, j) * pi(j + 1) + cs(i + 1) * cs(j + 1) * sum;
  }
  Scalar sum(0.0);
  for (int t = i + 1; t <= n; ++t) sum += prod(sn, t, n) * cs(t) / prod(sn, i + 1, t) * pi(t);
  return sn(i + 1) * prod(sn, i + 1, n) * pi(i + 1) + cs(i + 1) * sum;
}

/// Generator value in the state's own chart.
template <typename Scalar>
Scalar generator_value(const GeneratorId& id, const PhaseState<Scalar>& state, Curvature kappa) {
  return state.chart == Chart::Parallel ? parallel_generator(id, state, kappa)
                                        : polar_generator(id, state, kappa);
}

/// Ambient definition P̃ᵢ = s₀ṡᵢ - sᵢṡ₀, J̃ᵢⱼ = sᵢṡⱼ - sⱼṡᵢ, with ṡ from the
/// chart velocity formulas and q̇ = g⁻¹p. Independent of the chart
/// realizations above; used as their oracle.
template <typename Scalar>
Scalar realize_ambient(const GeneratorId& id, const PhaseState<Scalar>& state, Curvature kappa) {
  id.validate(state.dim());
  const ChartPoint<Scalar> pt = state.point();
  const VectorX<Scalar> s = to_weierstrass(pt, kappa);
  const VectorX<Scalar> sdot =
      weierstrass_velocity(pt, velocities_from_momenta(pt, state.p, kappa), kappa);
  const int a = id.is_translation() ? 0 : id.i;
  const int b = id.is_translation() ? id.i : id.j;
  return s(a) * sdot(b) - s(b) * sdot(a);
}

/// A generator realized as a phase-space function in a fixed chart.
struct RealizedGenerator {
  GeneratorId id;
  Chart chart = Chart::Parallel;
  PhaseFunction function;

  double operator()(const PhaseState<double>& s) const { return function(s); }
  Dual operator()(const PhaseState<Dual>& s) const { return function(s); }
};

RealizedGenerator realize_parallel(const GeneratorId& id, int n, Curvature kappa);
RealizedGenerator realize_polar(const GeneratorId& id, int n, Curvature kappa);
RealizedGenerator realize(const GeneratorId& id, int n, Curvature kappa, Chart chart);
/// All N(N+1)/2 realized generators in all_generators(n) order.
std::vector<RealizedGenerator> realize_all(int n, Curvature kappa, Chart chart);

/// Realized second-order Casimir Σᵢ P̃ᵢ² + κ Σ_{i<j} J̃ᵢⱼ² (equals 2T).
template <typename Scalar>
Scalar casimir_value(const PhaseState<Scalar>& state, Curvature kappa) {
  const int n = state.dim();
  Scalar translations(0.0), rotations(0.0);
  for (const auto& id : all_generators(n)) {
    const Scalar v = generator_value(id, state, kappa);
    (id.is_translation() ? translations : rotations) += v * v;
  }
  return translations + kappa.value() * rotations;
}

/// Re-expresses a phase state in another chart: the point through the
/// Weierstrass model, the momenta as g_target · (push-forward of q̇).
PhaseState<double> convert_state(const PhaseState<double>& state, Chart target, Curvature kappa);

}  // namespace swk
