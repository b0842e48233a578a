#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "swk/phase.hpp"
#include "swk/phase_state.hpp"
#include "swk/poisson.hpp"

namespace swk {

/// Coupling constants β₀ (oscillator) and β₁..β_N (centrifugal terms).
struct SWParams {
  Eigen::VectorXd beta;

  SWParams() = default;
  explicit SWParams(Eigen::VectorXd b);

  int dim() const { return static_cast<int>(beta.size()) - 1; }
  /// Throws ConfigError unless beta has N+1 finite entries.
  void validate(int n) const;
  /// Some βᵢ is exactly zero; the independence rank may drop.
  bool degenerate() const;
  /// Some βᵢ < 0; dynamics need not be bounded below.
  bool has_negative() const;
};

/// Integral I_ij attached to the generator J_ij (i = 0 for translations),
/// 0 ≤ i < j ≤ N.
struct IntegralId {
  int i = 0;
  int j = 1;

  /// "I_0_1", "I_1_2", ...
  std::string name() const;
  void validate(int n) const;
  bool shares_index(const IntegralId& o) const {
    return i == o.i || i == o.j || j == o.i || j == o.j;
  }
  auto operator<=>(const IntegralId&) const = default;
};

/// I_0_1..I_0_N followed by I_1_2, I_1_3, ..., I_{N-1}_N.
std::vector<IntegralId> integral_ids(int n);

namespace sw_detail {

template <typename Scalar>
Scalar inv_sq(const Scalar& x) {
  return Scalar(1.0) / (x * x);
}

// Throws if some sᵢ with βᵢ ≠ 0 vanishes.
template <typename Scalar>
void check_walls(const VectorX<Scalar>& s, const SWParams& params) {
  for (int i = 0; i < s.size(); ++i) {
    if (params.beta(i) != 0.0 && std::abs(value_of(s(i))) < 1e-14) {
      throw SingularityError("potential singular: s_" + std::to_string(i) + " = 0", i);
    }
  }
}

}  // namespace sw_detail

/// Ambient form U = β₀ Σ s_l² / s₀² + Σ βᵢ / sᵢ².
template <typename Scalar>
Scalar potential_ambient(const VectorX<Scalar>& s, const SWParams& params) {
  sw_detail::check_walls(s, params);
  const int n = static_cast<int>(s.size()) - 1;
  Scalar sum_sq(0.0), centrifugal(0.0);
  for (int i = 1; i <= n; ++i) {
    sum_sq += s(i) * s(i);
    if (params.beta(i) != 0.0) centrifugal += params.beta(i) * sw_detail::inv_sq(s(i));
  }
  if (params.beta(0) == 0.0) return centrifugal;
  return params.beta(0) * sum_sq / (s(0) * s(0)) + centrifugal;
}

/// SW potential written in the point's chart:
///   parallel: β₀ Σᵢ Sκ²(aᵢ)/∏_{l≤i} Cκ²(a_l) + Σ_{i<N} βᵢ/(Sκ²(aᵢ) ∏_{l>i} Cκ²(a_l)) + β_N/Sκ²(a_N)
///   polar:    β₀ Tκ²(r) + (β₁/cos²θ₂ + Σ_{i=2}^{N-1} βᵢ/(cos²θ_{i+1} ∏_{l=2}^{i} sin²θ_l)
///                          + β_N/∏_{l=2}^{N} sin²θ_l) / Sκ²(r)
/// Throws SingularityError carrying the ambient index of a vanishing sᵢ.
template <typename Scalar>
Scalar potential(const ChartPoint<Scalar>& q, const SWParams& params, Curvature kappa) {
  using phase_detail::prod;
  using std::cos;
  using std::sin;
  using sw_detail::inv_sq;
  const int n = q.dim();
  params.validate(n);
  sw_detail::check_walls(to_weierstrass(q, kappa), params);
  const Eigen::VectorXd& beta = params.beta;
  Scalar u(0.0);
  if (q.chart == Chart::Parallel) {
    VectorX<Scalar> c2(n + 1), s2(n + 1);
    for (int l = 1; l <= n; ++l) {
      const Scalar c = cos_k(kappa, q.coords(l - 1));
      const Scalar s = sin_k(kappa, q.coords(l - 1));
      c2(l) = c * c;
      s2(l) = s * s;
    }
    for (int i = 1; i <= n; ++i) {
      if (beta(0) != 0.0) u += beta(0) * s2(i) / prod(c2, 1, i);
      if (beta(i) != 0.0) u += beta(i) / (s2(i) * prod(c2, i + 1, n));
    }
    return u;
  }
  VectorX<Scalar> sin2(n + 1), cos2(n + 1);
  sin2(0) = sin2(1) = cos2(0) = cos2(1) = Scalar(1.0);
  for (int l = 2; l <= n; ++l) {
    const Scalar st = sin(q.coords(l - 1));
    const Scalar ct = cos(q.coords(l - 1));
    sin2(l) = st * st;
    cos2(l) = ct * ct;
  }
  const Scalar sr = sin_k(kappa, q.coords(0));
  const Scalar cr = cos_k(kappa, q.coords(0));
  Scalar angular(0.0);
  if (beta(1) != 0.0) angular += beta(1) / cos2(2);
  for (int i = 2; i <= n - 1; ++i)
    if (beta(i) != 0.0) angular += beta(i) / (cos2(i + 1) * prod(sin2, 2, i));
  if (beta(n) != 0.0) angular += beta(n) / prod(sin2, 2, n);
  if (beta(0) != 0.0) u += beta(0) * sr * sr / (cr * cr);
  return u + angular * inv_sq(sr);
}

/// H = T + U.
template <typename Scalar>
Scalar hamiltonian(const PhaseState<Scalar>& state, const SWParams& params, Curvature kappa) {
  return kinetic_energy(state, kappa) + potential(state.point(), params, kappa);
}

/// Integral of motion in the state's chart (quadratic in momenta):
///   parallel: I_0i = P̃ᵢ² + 2β₀ Sκ²(aᵢ)/∏_{l≤i}Cκ²(a_l) + 2βᵢ ∏_{l≤i}Cκ²(a_l)/Sκ²(aᵢ)
///             I_ij = J̃ᵢⱼ² + 2βᵢ Sκ²(aⱼ)/(Sκ²(aᵢ) ∏_{l=i+1}^{j}Cκ²(a_l))
///                         + 2βⱼ Sκ²(aᵢ) ∏_{l=i+1}^{j}Cκ²(a_l)/Sκ²(aⱼ)
///   polar: the corresponding ratios in (r, θ); every centrifugal ratio is
///          2βᵢ sⱼ²/sᵢ² + 2βⱼ sᵢ²/sⱼ² written in chart functions.
template <typename Scalar>
Scalar integral(const IntegralId& id, const PhaseState<Scalar>& state, const SWParams& params,
                Curvature kappa) {
  using phase_detail::prod;
  using std::cos;
  using std::sin;
  const int n = state.dim();
  id.validate(n);
  params.validate(n);
  sw_detail::check_walls(to_weierstrass(state.point(), kappa), params);
  const Eigen::VectorXd& beta = params.beta;
  const int i = id.i, j = id.j;
  const GeneratorId gen = i == 0 ? GeneratorId::translation(j) : GeneratorId::rotation(i, j);
  const Scalar g = generator_value(gen, state, kappa);

  // ratio = sⱼ²/sᵢ² in chart functions; I = g² + 2βᵢ ratio + 2βⱼ / ratio.
  Scalar ratio;
  if (state.chart == Chart::Parallel) {
    VectorX<Scalar> c2(n + 1), s2(n + 1);
    for (int l = 1; l <= n; ++l) {
      const Scalar c = cos_k(kappa, state.q(l - 1));
      const Scalar s = sin_k(kappa, state.q(l - 1));
      c2(l) = c * c;
      s2(l) = s * s;
    }
    ratio = i == 0 ? s2(j) / prod(c2, 1, j) : s2(j) / (s2(i) * prod(c2, i + 1, j));
  } else {
    VectorX<Scalar> sin2(n + 1), cos2(n + 1);
    sin2(0) = sin2(1) = cos2(0) = cos2(1) = Scalar(1.0);
    for (int l = 2; l <= n; ++l) {
      const Scalar st = sin(state.q(l - 1));
      const Scalar ct = cos(state.q(l - 1));
      sin2(l) = st * st;
      cos2(l) = ct * ct;
    }
    const Scalar sr = sin_k(kappa, state.q(0));
    const Scalar cr = cos_k(kappa, state.q(0));
    const Scalar t2 = sr * sr / (cr * cr);  // Tκ²(r)
    if (i == 0) {
      // Tκ²(r) ∏_{l=2}^{j+1} sin²θ_l / tan²θ_{j+1}, or Tκ²(r) ∏_{l=2}^{N} sin²θ_l for j = N
      ratio = j < n ? t2 * prod(sin2, 2, j + 1) * cos2(j + 1) / sin2(j + 1) : t2 * prod(sin2, 2, n);
    } else {
      // cos²θ_{j+1} ∏_{l=i+1}^{j} sin²θ_l / cos²θ_{i+1}, without the cos²θ_{j+1} for j = N
      const Scalar top = j < n ? cos2(j + 1) * prod(sin2, i + 1, j) : prod(sin2, i + 1, n);
      ratio = top / cos2(i + 1);
    }
  }
  Scalar out = g * g;
  if (beta(i) != 0.0) out += 2.0 * beta(i) * ratio;
  if (beta(j) != 0.0) out += 2.0 * beta(j) / ratio;
  return out;
}

/// Ambient form (sᵢṡⱼ - sⱼṡᵢ)² + 2βᵢ sⱼ²/sᵢ² + 2βⱼ sᵢ²/sⱼ² through the chart map.
template <typename Scalar>
Scalar integral_ambient(const IntegralId& id, const PhaseState<Scalar>& state,
                        const SWParams& params, Curvature kappa) {
  id.validate(state.dim());
  const VectorX<Scalar> s = to_weierstrass(state.point(), kappa);
  sw_detail::check_walls(s, params);
  const GeneratorId gen =
      id.i == 0 ? GeneratorId::translation(id.j) : GeneratorId::rotation(id.i, id.j);
  const Scalar g = realize_ambient(gen, state, kappa);
  const Scalar ratio = s(id.j) * s(id.j) / (s(id.i) * s(id.i));
  Scalar out = g * g;
  if (params.beta(id.i) != 0.0) out += 2.0 * params.beta(id.i) * ratio;
  if (params.beta(id.j) != 0.0) out += 2.0 * params.beta(id.j) / ratio;
  return out;
}

/// Q^(l) = Σ_{1≤i<j≤l} I_ij  (l = 2..N).
template <typename Scalar>
Scalar q_up(int l, const PhaseState<Scalar>& state, const SWParams& params, Curvature kappa) {
  const int n = state.dim();
  if (l < 2 || l > n) throw ConfigError("Q^(l) needs 2 <= l <= N");
  Scalar sum(0.0);
  for (int i = 1; i <= l; ++i)
    for (int j = i + 1; j <= l; ++j) sum += integral(IntegralId{i, j}, state, params, kappa);
  return sum;
}

/// Q_(l) = Σ_{N-l+1≤i<j≤N} I_ij  (l = 2..N).
template <typename Scalar>
Scalar q_down(int l, const PhaseState<Scalar>& state, const SWParams& params, Curvature kappa) {
  const int n = state.dim();
  if (l < 2 || l > n) throw ConfigError("Q_(l) needs 2 <= l <= N");
  Scalar sum(0.0);
  for (int i = n - l + 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) sum += integral(IntegralId{i, j}, state, params, kappa);
  return sum;
}

/// |2H - (Σᵢ I_0i + κ Σ_{i<j} I_ij + 2κ Σᵢ βᵢ)|, pairs counted once (i<j).
double sum_rule_residual(const PhaseState<double>& state, const SWParams& params, Curvature kappa);

PhaseFunction hamiltonian_function(const SWParams& params, Curvature kappa);
PhaseFunction kinetic_function(Curvature kappa);
PhaseFunction integral_function(const IntegralId& id, const SWParams& params, Curvature kappa);
PhaseFunction q_up_function(int l, const SWParams& params, Curvature kappa);
PhaseFunction q_down_function(int l, const SWParams& params, Curvature kappa);

/// Independently written flat SW system: H = ½Σ(pᵢ² + 2β₀qᵢ² + 2βᵢ/qᵢ²),
/// I_0i = pᵢ² + 2β₀qᵢ² + 2βᵢ/qᵢ², I_ij = (qᵢpⱼ - qⱼpᵢ)² + 2βᵢqⱼ²/qᵢ² + 2βⱼqᵢ²/qⱼ².
namespace flat {

double hamiltonian(const Eigen::VectorXd& q, const Eigen::VectorXd& p, const SWParams& params);
double integral(const IntegralId& id, const Eigen::VectorXd& q, const Eigen::VectorXd& p,
                const SWParams& params);

}  // namespace flat

struct BracketCheck {
  std::string group;  // "disjoint", "conservation", "up", "down", "unconstrained", ...
  std::string a;
  std::string b;
  double residual = 0.0;
  bool asserted = true;
};

struct InvolutionReport {
  int n = 0;
  double kappa = 0.0;
  Chart chart = Chart::Parallel;
  int trials = 0;
  double tolerance = 1e-9;
  double max_asserted_residual = 0.0;
  bool passed = false;
  std::vector<BracketCheck> checks;
};

/// Brackets among integrals, Q-families and H over random states:
/// asserted groups are disjoint-index pairs, {I, H}, and each Q-family with
/// H; index-sharing pairs and {Q, I_0i} are measured but not asserted.
InvolutionReport verify_involution(int n, Curvature kappa, const SWParams& params, int trials,
                                   std::uint64_t seed, Chart chart = Chart::Parallel,
                                   double tolerance = 1e-9);

struct RankSample {
  Eigen::VectorXd singular_values;
  int rank = 0;
  double gap_ratio = 0.0;  // σ_{2N-1}/σ_max
};

struct IndependenceCertificate {
  int n = 0;
  double kappa = 0.0;
  Chart chart = Chart::Parallel;
  std::vector<std::string> functions;
  double relative_threshold = 1e-8;
  int expected_rank = 0;
  std::vector<PhaseState<double>> states;
  std::vector<RankSample> samples;
  double full_rank_fraction = 0.0;
  int max_rank = 0;
  double min_gap_ratio = 0.0;
  bool valid = false;
  std::vector<std::string> warnings;
};

/// Numerical rank of the Jacobian of `functions` at `state`
/// (singular values above σ_max·relative_threshold).
RankSample jacobian_rank(const std::vector<PhaseFunction>& functions,
                         const PhaseState<double>& state, double relative_threshold = 1e-8);

/// {Q^(2..N), Q_(N-1..2), I_0i, H}: certifies rank 2N-1 at ≥ 95% of samples.
IndependenceCertificate independence_certificate(int n, Curvature kappa, const SWParams& params,
                                                 int samples, std::uint64_t seed,
                                                 Chart chart = Chart::Parallel,
                                                 int fixed_translation = 1);

struct LimitReport {
  int n = 0;
  int trials = 0;
  std::vector<double> kappas;      // 1e-4, 1e-6, 1e-8
  std::vector<double> deviations;  // max |f_κ - f_flat| over f ∈ {H, I_ij} and states
  std::vector<double> ratios;      // deviations[k+1]/deviations[k]
  double deviation_at_zero = 0.0;
  double tolerance = 1e-6;
  bool passed = false;
};

/// Curved H and integrals at small κ against the independent flat code, in
/// parallel coordinates at unit-scale states (|qᵢ| ∈ [0.5, 1], |pᵢ| ≤ 1). Passes when the κ = 1e-8 deviation is below 1e-6,
/// successive ratios are 1e-2 within 10%, and κ = 0 agrees to rounding.
LimitReport euclidean_limit_check(int n, const SWParams& params, int trials, std::uint64_t seed);

}  // namespace swk
