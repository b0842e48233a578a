#include "swk/geometry.hpp"

#include <algorithm>
#include <numbers>

#include <Eigen/LU>

namespace swk {

std::string to_string(Chart chart) { return chart == Chart::Parallel ? "parallel" : "polar"; }

Chart chart_from_string(const std::string& name) {
  if (name == "parallel") return Chart::Parallel;
  if (name == "polar") return Chart::Polar;
  throw ConfigError("unknown chart '" + name + "' (expected parallel|polar)");
}

Eigen::MatrixXd metric_at(const ChartPoint<double>& q, Curvature kappa) {
  return metric_diagonal(q, kappa).asDiagonal();
}

void check_domain(const ChartPoint<double>& q, Curvature kappa, double margin) {
  const int n = q.dim();
  if (n < 2) throw ConfigError("N must be >= 2");
  if (!q.coords.allFinite()) throw ChartDomainError("non-finite chart coordinates");
  const double k = kappa.value();
  if (q.chart == Chart::Parallel) {
    for (int l = 1; l <= n; ++l) {
      const double a = q.coords(l - 1);
      if (k > 0.0 && std::abs(a) >= std::numbers::pi / (2.0 * std::sqrt(k))) {
        throw ChartDomainError("parallel coordinate a_" + std::to_string(l) +
                                   " outside |a| < pi/(2 sqrt(kappa))",
                               l);
      }
      if (std::abs(cos_k(kappa, a)) <= margin) {
        throw ChartDomainError("C_kappa(a_" + std::to_string(l) + ") too close to zero", l);
      }
    }
    return;
  }
  const double r = q.coords(0);
  if (r <= 0.0 || (k > 0.0 && r >= std::numbers::pi / std::sqrt(k))) {
    throw ChartDomainError("polar radius outside (0, pi/sqrt(kappa))", 1);
  }
  if (std::abs(sin_k(kappa, r)) <= margin) {
    throw ChartDomainError("S_kappa(r) too close to zero", 1);
  }
  for (int l = 2; l <= n; ++l) {
    if (std::abs(std::sin(q.coords(l - 1))) <= margin) {
      throw ChartDomainError("sin(theta_" + std::to_string(l) + ") too close to zero", l);
    }
  }
}

double Christoffel::max_abs_diff(const Christoffel& other) const {
  double m = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    m = std::max(m, std::abs(data_[i] - other.data_[i]));
  return m;
}

Christoffel christoffel_parallel(const ChartPoint<double>& q, Curvature kappa) {
  if (q.chart != Chart::Parallel) throw ConfigError("christoffel_parallel needs a parallel point");
  const int n = q.dim();
  const double k = kappa.value();
  Christoffel gamma(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double t = tan_k(kappa, q.coords(j));
      gamma(i, i, j) = -k * t;
      gamma(i, j, i) = -k * t;
      double prod = 1.0;
      for (int l = i + 1; l <= j; ++l) {
        const double c = cos_k(kappa, q.coords(l));
        prod *= c * c;
      }
      gamma(j, i, i) = k * t * prod;
    }
  }
  return gamma;
}

namespace {

// dg[m](a,b) = ∂_m g_ab via one dual evaluation per coordinate.
std::vector<Eigen::MatrixXd> metric_derivatives(const ChartPoint<double>& q, Curvature kappa) {
  const int n = q.dim();
  std::vector<Eigen::MatrixXd> dg;
  dg.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    ChartPoint<Dual> qd{q.chart, q.coords.cast<Dual>()};
    qd.coords(m).eps = 1.0;
    const VectorX<Dual> g = metric_diagonal(qd, kappa);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < n; ++a) d(a, a) = g(a).eps;
    dg.push_back(std::move(d));
  }
  return dg;
}

}  // namespace

Christoffel christoffel_from_metric(const ChartPoint<double>& q, Curvature kappa) {
  const int n = q.dim();
  const Eigen::MatrixXd g_inv = metric_at(q, kappa).inverse();
  const auto dg = metric_derivatives(q, kappa);
  Christoffel gamma(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double sum = 0.0;
        for (int l = 0; l < n; ++l) {
          const auto ul = static_cast<std::size_t>(l);
          const auto uj = static_cast<std::size_t>(j);
          const auto uk = static_cast<std::size_t>(k);
          sum += g_inv(i, l) * (dg[uj](l, k) + dg[uk](l, j) - dg[ul](j, k));
        }
        gamma(i, j, k) = 0.5 * sum;
      }
  return gamma;
}

double scalar_curvature_check(const ChartPoint<double>& q, Curvature kappa) {
  const int n = q.dim();
  const Christoffel gamma = christoffel_from_metric(q, kappa);

  // dgamma[m] = ∂_m Γ by central differences.
  std::vector<Christoffel> dgamma;
  dgamma.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double h = 1e-5 * std::max(1.0, std::abs(q.coords(m)));
    ChartPoint<double> plus = q, minus = q;
    plus.coords(m) += h;
    minus.coords(m) -= h;
    const Christoffel gp = christoffel_from_metric(plus, kappa);
    const Christoffel gm = christoffel_from_metric(minus, kappa);
    Christoffel d(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) d(i, j, k) = (gp(i, j, k) - gm(i, j, k)) / (2.0 * h);
    dgamma.push_back(std::move(d));
  }

  // Ric_{σν} = R^ρ_{σρν} = ∂_ρ Γ^ρ_{νσ} - ∂_ν Γ^ρ_{ρσ} + Γ^ρ_{ρλ} Γ^λ_{νσ} - Γ^ρ_{νλ} Γ^λ_{ρσ}
  Eigen::MatrixXd ricci = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s)
    for (int v = 0; v < n; ++v) {
      double sum = 0.0;
      for (int r = 0; r < n; ++r) {
        sum += dgamma[static_cast<std::size_t>(r)](r, v, s);
        sum -= dgamma[static_cast<std::size_t>(v)](r, r, s);
        for (int l = 0; l < n; ++l) {
          sum += gamma(r, r, l) * gamma(l, v, s);
          sum -= gamma(r, v, l) * gamma(l, r, s);
        }
      }
      ricci(s, v) = sum;
    }
  const Eigen::MatrixXd g_inv = metric_at(q, kappa).inverse();
  return (g_inv.cwiseProduct(ricci)).sum();
}

}  // namespace swk
