#pragma once

#include <cmath>
#include <string>

#include "swk/dual.hpp"
#include "swk/errors.hpp"

namespace swk {

enum class CurvatureSign { Negative, Zero, Positive };

/// Constant sectional curvature κ of the space S^N_[κ].
///
/// κ is carried as given; it is never rescaled to {-1, 0, +1}.
class Curvature {
 public:
  explicit Curvature(double kappa) : kappa_(kappa) {
    if (!std::isfinite(kappa)) throw ConfigError("curvature must be finite");
  }

  double value() const noexcept { return kappa_; }

  CurvatureSign sign() const noexcept {
    if (kappa_ > 0.0) return CurvatureSign::Positive;
    if (kappa_ < 0.0) return CurvatureSign::Negative;
    return CurvatureSign::Zero;
  }

  /// "sphere", "flat" or "hyperbolic".
  std::string space_name() const {
    switch (sign()) {
      case CurvatureSign::Positive: return "sphere";
      case CurvatureSign::Zero: return "flat";
      case CurvatureSign::Negative: return "hyperbolic";
    }
    return "flat";
  }

 private:
  double kappa_;
};

namespace ktrig_detail {

// Below this value of |κ|·x² the power series is used. Six terms leave a
// truncation error far below double rounding there.
inline constexpr double kSeriesThreshold = 1e-4;
inline constexpr int kSeriesTerms = 6;

inline bool use_series(double kappa, double x) {
  return std::abs(kappa) * x * x < kSeriesThreshold;
}

}  // namespace ktrig_detail

/// Curvature-dependent cosine: cos(√κ x), 1, cosh(√-κ x) for κ >,=,< 0.
template <typename Scalar>
Scalar cos_k(Curvature kappa, const Scalar& x) {
  using std::cos;
  using std::cosh;
  const double k = kappa.value();
  if (ktrig_detail::use_series(k, value_of(x))) {
    // Σ (-κ)^l x^{2l} / (2l)!
    const Scalar x2 = x * x;
    Scalar term(1.0);
    Scalar sum(1.0);
    for (int l = 1; l <= ktrig_detail::kSeriesTerms; ++l) {
      term = term * x2 * (-k / double((2 * l - 1) * (2 * l)));
      sum += term;
    }
    return sum;
  }
  if (k > 0.0) return cos(std::sqrt(k) * x);
  return cosh(std::sqrt(-k) * x);
}

/// Curvature-dependent sine: sin(√κ x)/√κ, x, sinh(√-κ x)/√-κ.
template <typename Scalar>
Scalar sin_k(Curvature kappa, const Scalar& x) {
  using std::sin;
  using std::sinh;
  const double k = kappa.value();
  if (ktrig_detail::use_series(k, value_of(x))) {
    // Σ (-κ)^l x^{2l+1} / (2l+1)!
    const Scalar x2 = x * x;
    Scalar term = x;
    Scalar sum = x;
    for (int l = 1; l <= ktrig_detail::kSeriesTerms; ++l) {
      term = term * x2 * (-k / double((2 * l) * (2 * l + 1)));
      sum += term;
    }
    return sum;
  }
  const double rk = std::sqrt(std::abs(k));
  if (k > 0.0) return sin(rk * x) / rk;
  return sinh(rk * x) / rk;
}

/// Versed sine Vκ(x) = (1 - Cκ(x))/κ, with V₀(x) = x²/2.
///
/// Evaluated as 2 sin²(√κ x/2)/κ (resp. sinh) away from the series
/// region, which avoids the cancellation in 1 - Cκ.
template <typename Scalar>
Scalar versin_k(Curvature kappa, const Scalar& x) {
  using std::sin;
  using std::sinh;
  const double k = kappa.value();
  if (ktrig_detail::use_series(k, value_of(x))) {
    // Σ_{l≥1} (-κ)^{l-1} x^{2l} / (2l)!
    const Scalar x2 = x * x;
    Scalar term = x2 * 0.5;
    Scalar sum = term;
    for (int l = 2; l <= ktrig_detail::kSeriesTerms + 1; ++l) {
      term = term * x2 * (-k / double((2 * l - 1) * (2 * l)));
      sum += term;
    }
    return sum;
  }
  const double rk = std::sqrt(std::abs(k));
  if (k > 0.0) {
    const Scalar h = sin(rk * x * 0.5);
    return h * h * (2.0 / k);
  }
  const Scalar h = sinh(rk * x * 0.5);
  return h * h * (2.0 / -k);
}

/// Curvature-dependent tangent Sκ(x)/Cκ(x).
///
/// Throws SingularityError at a pole (κ > 0, Cκ(x) = 0 to rounding).
template <typename Scalar>
Scalar tan_k(Curvature kappa, const Scalar& x) {
  const Scalar c = cos_k(kappa, x);
  if (std::abs(value_of(c)) < 1e-14) {
    throw SingularityError("tan_k pole: C_kappa(x) vanishes at x = " +
                           std::to_string(value_of(x)));
  }
  return sin_k(kappa, x) / c;
}

}  // namespace swk
