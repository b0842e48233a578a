#pragma once

#include <cmath>
#include <ostream>

#include <Eigen/Core>

namespace swk {

/// Forward-mode dual number `val + eps·ε` with ε² = 0.
///
/// Every phase-space formula in the library is written once, generic over
/// its scalar, so that evaluating it on a `Dual` seeded along one canonical
/// coordinate yields the exact partial derivative in `eps`.
struct Dual {
  double val = 0.0;
  double eps = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v) {}  // NOLINT: implicit promotion from constants
  constexpr Dual(double v, double e) : val(v), eps(e) {}

  constexpr Dual& operator+=(const Dual& o) {
    val += o.val;
    eps += o.eps;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    val -= o.val;
    eps -= o.eps;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    eps = eps * o.val + val * o.eps;
    val *= o.val;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    eps = (eps * o.val - val * o.eps) / (o.val * o.val);
    val /= o.val;
    return *this;
  }
};

constexpr Dual operator-(const Dual& a) { return {-a.val, -a.eps}; }
constexpr Dual operator+(const Dual& a) { return a; }
constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
constexpr Dual operator+(Dual a, double b) { return a += Dual(b); }
constexpr Dual operator+(double a, const Dual& b) { return Dual(a) += b; }
constexpr Dual operator-(Dual a, double b) { return a -= Dual(b); }
constexpr Dual operator-(double a, const Dual& b) { return Dual(a) -= b; }
constexpr Dual operator*(const Dual& a, double b) { return {a.val * b, a.eps * b}; }
constexpr Dual operator*(double a, const Dual& b) { return {a * b.val, a * b.eps}; }
constexpr Dual operator/(const Dual& a, double b) { return {a.val / b, a.eps / b}; }
constexpr Dual operator/(double a, const Dual& b) { return Dual(a) /= b; }

// Ordering looks at the value part only.
constexpr bool operator==(const Dual& a, const Dual& b) { return a.val == b.val; }
constexpr bool operator!=(const Dual& a, const Dual& b) { return a.val != b.val; }
constexpr bool operator<(const Dual& a, const Dual& b) { return a.val < b.val; }
constexpr bool operator>(const Dual& a, const Dual& b) { return a.val > b.val; }
constexpr bool operator<=(const Dual& a, const Dual& b) { return a.val <= b.val; }
constexpr bool operator>=(const Dual& a, const Dual& b) { return a.val >= b.val; }

inline Dual sin(const Dual& a) { return {std::sin(a.val), std::cos(a.val) * a.eps}; }
inline Dual cos(const Dual& a) { return {std::cos(a.val), -std::sin(a.val) * a.eps}; }
inline Dual tan(const Dual& a) {
  const double t = std::tan(a.val);
  return {t, (1.0 + t * t) * a.eps};
}
inline Dual sinh(const Dual& a) { return {std::sinh(a.val), std::cosh(a.val) * a.eps}; }
inline Dual cosh(const Dual& a) { return {std::cosh(a.val), std::sinh(a.val) * a.eps}; }
inline Dual tanh(const Dual& a) {
  const double t = std::tanh(a.val);
  return {t, (1.0 - t * t) * a.eps};
}
inline Dual exp(const Dual& a) {
  const double e = std::exp(a.val);
  return {e, e * a.eps};
}
inline Dual log(const Dual& a) { return {std::log(a.val), a.eps / a.val}; }
inline Dual sqrt(const Dual& a) {
  const double r = std::sqrt(a.val);
  return {r, a.eps / (2.0 * r)};
}
inline Dual abs(const Dual& a) { return a.val < 0.0 ? -a : a; }
inline Dual atan(const Dual& a) { return {std::atan(a.val), a.eps / (1.0 + a.val * a.val)}; }
inline Dual atanh(const Dual& a) { return {std::atanh(a.val), a.eps / (1.0 - a.val * a.val)}; }
inline Dual asinh(const Dual& a) {
  return {std::asinh(a.val), a.eps / std::sqrt(1.0 + a.val * a.val)};
}
inline Dual atan2(const Dual& y, const Dual& x) {
  const double r2 = x.val * x.val + y.val * y.val;
  return {std::atan2(y.val, x.val), (x.val * y.eps - y.val * x.eps) / r2};
}
inline bool isfinite(const Dual& a) { return std::isfinite(a.val) && std::isfinite(a.eps); }

inline std::ostream& operator<<(std::ostream& os, const Dual& a) {
  return os << a.val << (a.eps < 0 ? "-" : "+") << std::abs(a.eps) << "e";
}

/// Value part of a scalar: identity for `double`, `.val` for `Dual`.
constexpr double value_of(double x) { return x; }
constexpr double value_of(const Dual& x) { return x.val; }

/// Derivative part of a scalar; zero for plain doubles.
constexpr double derivative_of(double) { return 0.0; }
constexpr double derivative_of(const Dual& x) { return x.eps; }

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace swk

namespace Eigen {

template <>
struct NumTraits<swk::Dual> : NumTraits<double> {
  using Real = swk::Dual;
  using NonInteger = swk::Dual;
  using Nested = swk::Dual;
  using Literal = swk::Dual;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 4
  };
};

}  // namespace Eigen
