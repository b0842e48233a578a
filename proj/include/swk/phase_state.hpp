#pragma once

#include <functional>
#include <string>
#include <utility>

#include "swk/dual.hpp"
#include "swk/geometry.hpp"

namespace swk {

/// Canonical coordinates (q, p) in one chart; 2N reals.
/// For the polar chart p = (π₁, ..., π_N) conjugate to (r, θ₂, ..., θ_N).
template <typename Scalar = double>
struct PhaseState {
  Chart chart = Chart::Parallel;
  VectorX<Scalar> q;
  VectorX<Scalar> p;

  int dim() const { return static_cast<int>(q.size()); }
  ChartPoint<Scalar> point() const { return {chart, q}; }

  /// (q, p) stacked into one 2N vector.
  VectorX<Scalar> packed() const {
    VectorX<Scalar> x(2 * dim());
    x << q, p;
    return x;
  }

  static PhaseState unpacked(Chart chart, const VectorX<Scalar>& x) {
    const auto n = x.size() / 2;
    return {chart, x.head(n), x.tail(n)};
  }

  template <typename Other>
  PhaseState<Other> cast() const {
    return {chart, q.template cast<Other>(), p.template cast<Other>()};
  }
};

/// A scalar phase-space function that can be evaluated on plain doubles and
/// on dual numbers, built from one generic callable.
class PhaseFunction {
 public:
  PhaseFunction() = default;

  /// `f` must be callable as `f(const PhaseState<S>&) -> S` for S = double and Dual.
  template <typename F>
  static PhaseFunction make(std::string name, F f) {
    PhaseFunction out;
    out.name_ = std::move(name);
    out.real_ = [f](const PhaseState<double>& s) { return f(s); };
    out.dual_ = [f](const PhaseState<Dual>& s) { return f(s); };
    return out;
  }

  double operator()(const PhaseState<double>& s) const { return real_(s); }
  Dual operator()(const PhaseState<Dual>& s) const { return dual_(s); }

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<double(const PhaseState<double>&)> real_;
  std::function<Dual(const PhaseState<Dual>&)> dual_;
};

}  // namespace swk
