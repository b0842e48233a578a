#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "swk/dual.hpp"
#include "swk/errors.hpp"
#include "swk/ktrig.hpp"

namespace swk {

/// Intrinsic geodesic coordinate systems on S^N_[κ].
///
/// Parallel: lengths (a₁..a_N) reached by exp(a₁P₁)…exp(a_N P_N) O.
/// Polar:    (r, θ₂..θ_N) reached by exp(θ_N J_{N-1,N})…exp(θ₂J₁₂) exp(r P₁) O.
/// Coordinate vectors are 0-based: polar coords(0) = r, coords(l-1) = θ_l.
enum class Chart { Parallel, Polar };

std::string to_string(Chart chart);
/// Accepts "parallel" / "polar"; throws ConfigError otherwise.
Chart chart_from_string(const std::string& name);

template <typename Scalar = double>
struct ChartPoint {
  Chart chart = Chart::Parallel;
  VectorX<Scalar> coords;

  int dim() const { return static_cast<int>(coords.size()); }
};

/// Weierstrass image of a parallel-chart point:
/// s₀ = ∏ Cκ(a_l),  sᵢ = Sκ(aᵢ) ∏_{l>i} Cκ(a_l).
template <typename Scalar>
VectorX<Scalar> parallel_to_weierstrass(const VectorX<Scalar>& a, Curvature kappa) {
  const int n = static_cast<int>(a.size());
  VectorX<Scalar> s(n + 1);
  Scalar tail(1.0);  // ∏_{l>i} Cκ(a_l)
  for (int i = n; i >= 1; --i) {
    s(i) = sin_k(kappa, a(i - 1)) * tail;
    tail = tail * cos_k(kappa, a(i - 1));
  }
  s(0) = tail;
  return s;
}

/// Weierstrass image of a polar-chart point:
/// s₀ = Cκ(r), s₁ = Sκ(r) cos θ₂, ..., s_N = Sκ(r) sin θ₂ … sin θ_N.
template <typename Scalar>
VectorX<Scalar> polar_to_weierstrass(const VectorX<Scalar>& th, Curvature kappa) {
  using std::cos;
  using std::sin;
  const int n = static_cast<int>(th.size());
  VectorX<Scalar> s(n + 1);
  s(0) = cos_k(kappa, th(0));
  Scalar head = sin_k(kappa, th(0));  // Sκ(r) sin θ₂ … sin θ_i
  for (int i = 1; i < n; ++i) {
    s(i) = head * cos(th(i));
    head = head * sin(th(i));
  }
  s(n) = head;
  return s;
}

template <typename Scalar>
VectorX<Scalar> to_weierstrass(const ChartPoint<Scalar>& q, Curvature kappa) {
  return q.chart == Chart::Parallel ? parallel_to_weierstrass(q.coords, kappa)
                                    : polar_to_weierstrass(q.coords, kappa);
}

/// s₀² + κ Σ sᵢ² - 1.
inline double quadric_residual(const Eigen::VectorXd& s, Curvature kappa) {
  return s(0) * s(0) + kappa.value() * s.tail(s.size() - 1).squaredNorm() - 1.0;
}

/// Principal κ-arc: the x with Sκ(x) ∝ y and Cκ(x) ∝ c (same positive factor).
/// For κ < 0 this requires |√-κ y| < c (upper sheet of the hyperboloid).
template <typename Scalar>
Scalar arc_k(Curvature kappa, const Scalar& y, const Scalar& c) {
  using std::atan2;
  using std::atanh;
  const double k = kappa.value();
  if (k > 0.0) {
    const double rk = std::sqrt(k);
    return atan2(y * rk, c) / rk;
  }
  if (k < 0.0) {
    const double rk = std::sqrt(-k);
    return atanh(y * rk / c) / rk;
  }
  return y / c;
}

/// Inverse of parallel_to_weierstrass on the principal branch
/// |a_l| < π/(2√κ) for l ≥ 2 and a₁ ∈ (-π/√κ, π/√κ].
///
/// The triangular structure is peeled from the last coordinate:
/// a_N from (s_N, Cκ(a_N)), then s₀..s_{N-1} are divided by Cκ(a_N), etc.
template <typename Scalar>
VectorX<Scalar> weierstrass_to_parallel(const VectorX<Scalar>& s_in, Curvature kappa) {
  using std::sqrt;
  const int n = static_cast<int>(s_in.size()) - 1;
  const double k = kappa.value();
  VectorX<Scalar> s = s_in;
  VectorX<Scalar> a(n);
  for (int i = n; i >= 2; --i) {
    Scalar c2 = s(0) * s(0);
    for (int l = 1; l < i; ++l) c2 += k * s(l) * s(l);
    const Scalar c = sqrt(c2);
    a(i - 1) = arc_k(kappa, s(i), c);
    for (int l = 0; l < i; ++l) s(l) = s(l) / c;
  }
  a(0) = arc_k(kappa, s(1), s(0));
  return a;
}

/// Inverse of polar_to_weierstrass with r ∈ [0, π/√κ), θ₂..θ_{N-1} ∈ [0, π],
/// θ_N ∈ (-π, π].
template <typename Scalar>
VectorX<Scalar> weierstrass_to_polar(const VectorX<Scalar>& s, Curvature kappa) {
  using std::atan2;
  using std::sqrt;
  const int n = static_cast<int>(s.size()) - 1;
  VectorX<Scalar> th(n);
  // tail(l) = √(Σ_{m≥l} s_m²)
  std::vector<Scalar> tail(static_cast<std::size_t>(n + 2), Scalar(0.0));
  Scalar acc(0.0);
  for (int m = n; m >= 1; --m) {
    acc += s(m) * s(m);
    tail[static_cast<std::size_t>(m)] = sqrt(acc);
  }
  th(0) = arc_k(kappa, tail[1], s(0));
  for (int l = 2; l < n; ++l) th(l - 1) = atan2(tail[static_cast<std::size_t>(l)], s(l - 1));
  th(n - 1) = atan2(s(n), s(n - 1));
  return th;
}

template <typename Scalar>
ChartPoint<Scalar> convert_point(const ChartPoint<Scalar>& q, Chart target, Curvature kappa) {
  if (q.chart == target) return q;
  const VectorX<Scalar> s = to_weierstrass(q, kappa);
  return {target, target == Chart::Parallel ? weierstrass_to_parallel(s, kappa)
                                            : weierstrass_to_polar(s, kappa)};
}

/// Diagonal of the chart metric.
///   parallel: g_ii = ∏_{l>i} Cκ²(a_l), g_NN = 1
///   polar:    g_rr = 1, g_θᵢθᵢ = Sκ²(r) ∏_{l=2}^{i-1} sin²θ_l
/// Throws SingularityError where a coefficient vanishes.
template <typename Scalar>
VectorX<Scalar> metric_diagonal(const ChartPoint<Scalar>& q, Curvature kappa) {
  using std::sin;
  const int n = q.dim();
  VectorX<Scalar> g(n);
  if (q.chart == Chart::Parallel) {
    Scalar tail(1.0);
    for (int i = n; i >= 1; --i) {
      g(i - 1) = tail;
      const Scalar c = cos_k(kappa, q.coords(i - 1));
      tail = tail * c * c;
    }
  } else {
    g(0) = Scalar(1.0);
    const Scalar sr = sin_k(kappa, q.coords(0));
    Scalar w = sr * sr;
    for (int i = 2; i <= n; ++i) {
      g(i - 1) = w;
      const Scalar st = sin(q.coords(i - 1));
      w = w * st * st;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!(std::abs(value_of(g(i))) > 1e-24)) {
      throw SingularityError("metric coefficient g_" + std::to_string(i + 1) +
                                 std::to_string(i + 1) + " vanishes",
                             i + 1);
    }
  }
  return g;
}

/// Full N×N metric (diagonal in both charts).
Eigen::MatrixXd metric_at(const ChartPoint<double>& q, Curvature kappa);

/// Ambient velocity ṡ for parallel coordinates and velocities (a, ȧ):
///   ṡ₀ = -κ ∏ Cκ(a_m) Σ_l Tκ(a_l) ȧ_l,
///   ṡᵢ = ∏_{m≥i} Cκ(a_m) (ȧᵢ - κ Tκ(aᵢ) Σ_{l>i} Tκ(a_l) ȧ_l).
template <typename Scalar>
VectorX<Scalar> parallel_weierstrass_velocity(const VectorX<Scalar>& a, const VectorX<Scalar>& adot,
                                              Curvature kappa) {
  const int n = static_cast<int>(a.size());
  const double k = kappa.value();
  VectorX<Scalar> c(n), t(n);
  for (int l = 0; l < n; ++l) {
    c(l) = cos_k(kappa, a(l));
    t(l) = tan_k(kappa, a(l));
  }
  VectorX<Scalar> sdot(n + 1);
  Scalar cprod(1.0);    // ∏_{m≥i} Cκ(a_m)
  Scalar tsum(0.0);     // Σ_{l>i} Tκ(a_l) ȧ_l
  for (int i = n; i >= 1; --i) {
    cprod = cprod * c(i - 1);
    sdot(i) = cprod * (adot(i - 1) - k * t(i - 1) * tsum);
    tsum += t(i - 1) * adot(i - 1);
  }
  sdot(0) = -k * cprod * tsum;
  return sdot;
}

/// Ambient velocity ṡ for polar coordinates and velocities (θ, θ̇).
/// Division by tan θ and Tκ(r) is carried out as multiplication by cos/sin
/// and Cκ/Sκ.
template <typename Scalar>
VectorX<Scalar> polar_weierstrass_velocity(const VectorX<Scalar>& th, const VectorX<Scalar>& thdot,
                                           Curvature kappa) {
  using std::cos;
  using std::sin;
  const int n = static_cast<int>(th.size());
  const Scalar sr = sin_k(kappa, th(0));
  const Scalar inv_tr = cos_k(kappa, th(0)) / sr;  // 1/Tκ(r)
  VectorX<Scalar> sn(n + 1), cs(n + 1), cot(n + 1);
  for (int l = 2; l <= n; ++l) {
    sn(l) = sin(th(l - 1));
    cs(l) = cos(th(l - 1));
    cot(l) = cs(l) / sn(l);
  }
  const Scalar rdot = thdot(0);
  VectorX<Scalar> sdot(n + 1);
  sdot(0) = -kappa.value() * sr * rdot;
  if (n == 1) return sdot;
  sdot(1) = sr * sn(2) * (rdot * inv_tr * cot(2) - thdot(1));
  Scalar sprod = sr * sn(2);  // Sκ(r) ∏_{m=2}^{j+1} sin θ_m
  Scalar angular(0.0);        // Σ_{l=2}^{j} θ̇_l / tan θ_l
  for (int j = 2; j <= n - 1; ++j) {
    sprod = sprod * sn(j + 1);
    angular += thdot(j - 1) * cot(j);
    sdot(j) = sprod * (rdot * inv_tr * cot(j + 1) + angular * cot(j + 1) - thdot(j));
  }
  angular += thdot(n - 1) * cot(n);
  sdot(n) = sprod * (rdot * inv_tr + angular);
  return sdot;
}

template <typename Scalar>
VectorX<Scalar> weierstrass_velocity(const ChartPoint<Scalar>& q, const VectorX<Scalar>& qdot,
                                     Curvature kappa) {
  return q.chart == Chart::Parallel ? parallel_weierstrass_velocity(q.coords, qdot, kappa)
                                    : polar_weierstrass_velocity(q.coords, qdot, kappa);
}

/// Throws ChartDomainError unless every factor the chart formulas divide by
/// stays above `margin` in magnitude:
///   parallel: |Cκ(a_l)| for all l (and a_l within the principal branch for κ>0);
///   polar:    |Sκ(r)|, |sin θ_l| for l = 2..N (and 0 < r < π/√κ for κ>0).
void check_domain(const ChartPoint<double>& q, Curvature kappa, double margin = 1e-12);

/// Γ^i_{jk} at a point, 0-based indices.
class Christoffel {
 public:
  explicit Christoffel(int n) : n_(n), data_(static_cast<std::size_t>(n * n * n), 0.0) {}

  int dim() const { return n_; }
  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  /// max |Γ - other| over all components.
  double max_abs_diff(const Christoffel& other) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }
  int n_;
  std::vector<double> data_;
};

/// Closed-form Christoffel symbols of the parallel chart:
///   Γ^i_{ij} = Γ^i_{ji} = -κ Tκ(a_j)                   (i < j),
///   Γ^j_{ii} = κ Tκ(a_j) ∏_{l=i+1}^{j} Cκ²(a_l)        (i < j).
Christoffel christoffel_parallel(const ChartPoint<double>& q, Curvature kappa);

/// ½ g^{il} (∂_j g_lk + ∂_k g_lj - ∂_l g_jk) for either chart, with exact
/// metric derivatives from dual numbers.
Christoffel christoffel_from_metric(const ChartPoint<double>& q, Curvature kappa);

/// Ricci scalar assembled from christoffel_from_metric, with ∂Γ taken by
/// central differences (step 1e-5·max(1,|x|)). Should equal N(N-1)κ.
double scalar_curvature_check(const ChartPoint<double>& q, Curvature kappa);

}  // namespace swk
