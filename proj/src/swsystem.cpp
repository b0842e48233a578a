#include "swk/swsystem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <Eigen/SVD>

#include "swk/residual.hpp"
#include "swk/sampling.hpp"

namespace swk {

SWParams::SWParams(Eigen::VectorXd b) : beta(std::move(b)) {}

void SWParams::validate(int n) const {
  if (beta.size() != n + 1) {
    throw ConfigError("beta must have N+1 = " + std::to_string(n + 1) + " entries, got " +
                      std::to_string(beta.size()));
  }
  if (!beta.allFinite()) throw ConfigError("beta entries must be finite");
}

bool SWParams::degenerate() const { return (beta.array() == 0.0).any(); }

bool SWParams::has_negative() const { return (beta.array() < 0.0).any(); }

std::string IntegralId::name() const {
  return "I_" + std::to_string(i) + "_" + std::to_string(j);
}

void IntegralId::validate(int n) const {
  if (!(0 <= i && i < j && j <= n)) {
    throw ConfigError("integral indices must satisfy 0 <= i < j <= N: " + name());
  }
}

std::vector<IntegralId> integral_ids(int n) {
  std::vector<IntegralId> out;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back({i, j});
  return out;
}

double sum_rule_residual(const PhaseState<double>& state, const SWParams& params,
                         Curvature kappa) {
  const double k = kappa.value();
  double translations = 0.0, rotations = 0.0;
  for (const auto& id : integral_ids(state.dim())) {
    const double v = integral(id, state, params, kappa);
    (id.i == 0 ? translations : rotations) += v;
  }
  const double beta_sum = params.beta.tail(state.dim()).sum();
  const double rhs = translations + k * rotations + 2.0 * k * beta_sum;
  return std::abs(2.0 * hamiltonian(state, params, kappa) - rhs);
}

PhaseFunction hamiltonian_function(const SWParams& params, Curvature kappa) {
  return PhaseFunction::make(
      "H", [params, kappa](const auto& s) { return hamiltonian(s, params, kappa); });
}

PhaseFunction kinetic_function(Curvature kappa) {
  return PhaseFunction::make("T", [kappa](const auto& s) { return kinetic_energy(s, kappa); });
}

PhaseFunction integral_function(const IntegralId& id, const SWParams& params, Curvature kappa) {
  return PhaseFunction::make(id.name(), [id, params, kappa](const auto& s) {
    return integral(id, s, params, kappa);
  });
}

PhaseFunction q_up_function(int l, const SWParams& params, Curvature kappa) {
  return PhaseFunction::make("Q^(" + std::to_string(l) + ")", [l, params, kappa](const auto& s) {
    return q_up(l, s, params, kappa);
  });
}

PhaseFunction q_down_function(int l, const SWParams& params, Curvature kappa) {
  return PhaseFunction::make("Q_(" + std::to_string(l) + ")", [l, params, kappa](const auto& s) {
    return q_down(l, s, params, kappa);
  });
}

namespace flat {

double hamiltonian(const Eigen::VectorXd& q, const Eigen::VectorXd& p, const SWParams& params) {
  double h = 0.0;
  for (int i = 0; i < q.size(); ++i) {
    h += p(i) * p(i) + 2.0 * params.beta(0) * q(i) * q(i) + 2.0 * params.beta(i + 1) / (q(i) * q(i));
  }
  return 0.5 * h;
}

double integral(const IntegralId& id, const Eigen::VectorXd& q, const Eigen::VectorXd& p,
                const SWParams& params) {
  const double b0 = params.beta(0);
  if (id.i == 0) {
    const int a = id.j - 1;
    return p(a) * p(a) + 2.0 * b0 * q(a) * q(a) + 2.0 * params.beta(id.j) / (q(a) * q(a));
  }
  const int a = id.i - 1, b = id.j - 1;
  const double l = q(a) * p(b) - q(b) * p(a);
  return l * l + 2.0 * params.beta(id.i) * q(b) * q(b) / (q(a) * q(a)) +
         2.0 * params.beta(id.j) * q(a) * q(a) / (q(b) * q(b));
}

}  // namespace flat

InvolutionReport verify_involution(int n, Curvature kappa, const SWParams& params, int trials,
                                   std::uint64_t seed, Chart chart, double tolerance) {
  params.validate(n);
  InvolutionReport report;
  report.n = n;
  report.kappa = kappa.value();
  report.chart = chart;
  report.trials = trials;
  report.tolerance = tolerance;

  const auto ids = integral_ids(n);
  std::vector<PhaseFunction> integrals;
  for (const auto& id : ids) integrals.push_back(integral_function(id, params, kappa));
  const PhaseFunction h = hamiltonian_function(params, kappa);
  std::vector<PhaseFunction> ups, downs;
  for (int l = 2; l <= n; ++l) {
    ups.push_back(q_up_function(l, params, kappa));
    downs.push_back(q_down_function(l, params, kappa));
  }

  // Each check is a pair of slots into one gradient table per state:
  // [integrals..., H, ups..., downs...].
  const std::size_t h_slot = integrals.size();
  const std::size_t up_base = h_slot + 1;
  const std::size_t down_base = up_base + ups.size();
  std::vector<PhaseFunction> all = integrals;
  all.push_back(h);
  all.insert(all.end(), ups.begin(), ups.end());
  all.insert(all.end(), downs.begin(), downs.end());

  struct Slot {
    BracketCheck check;
    std::size_t a, b;
  };
  std::vector<Slot> slots;
  auto add = [&](std::string group, std::size_t a, std::size_t b, bool asserted) {
    slots.push_back({BracketCheck{std::move(group), all[a].name(), all[b].name(), 0.0, asserted},
                     a, b});
  };
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      const bool disjoint = !ids[a].shares_index(ids[b]);
      add(disjoint ? "disjoint" : "unconstrained", a, b, disjoint);
    }
  }
  for (std::size_t a = 0; a < ids.size(); ++a) add("conservation", a, h_slot, true);
  for (const auto& [group, base] : {std::pair{std::string("up"), up_base},
                                    std::pair{std::string("down"), down_base}}) {
    for (std::size_t l = 0; l < ups.size(); ++l) {
      for (std::size_t m = l + 1; m < ups.size(); ++m) add(group, base + l, base + m, true);
      add(group, base + l, h_slot, true);
      // {Q, I_0i}: measured only.
      for (int i = 1; i <= n; ++i)
        add(group + "-translation", base + l, static_cast<std::size_t>(i - 1), false);
    }
  }

  StateSampler sampler(n, kappa, chart, seed);
  for (int t = 0; t < trials; ++t) {
    const PhaseState<double> state = sampler.next();
    std::vector<Eigen::VectorXd> grads;
    grads.reserve(all.size());
    for (const auto& f : all) grads.push_back(gradient(f, state));
    for (auto& slot : slots) {
      const double r = std::abs(bracket_from_gradients(grads[slot.a], grads[slot.b]));
      slot.check.residual = worst_of(slot.check.residual, r);
    }
  }
  for (auto& slot : slots) {
    if (slot.check.asserted)
      report.max_asserted_residual = worst_of(report.max_asserted_residual, slot.check.residual);
    report.checks.push_back(std::move(slot.check));
  }
  report.passed = report.max_asserted_residual <= tolerance;
  return report;
}

RankSample jacobian_rank(const std::vector<PhaseFunction>& functions,
                         const PhaseState<double>& state, double relative_threshold) {
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(functions.size()), 2 * state.dim());
  for (std::size_t r = 0; r < functions.size(); ++r)
    jac.row(static_cast<Eigen::Index>(r)) = gradient(functions[r], state).transpose();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  RankSample out;
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
  for (Eigen::Index k = 0; k < out.singular_values.size(); ++k)
    if (out.singular_values(k) > smax * relative_threshold) ++out.rank;
  if (out.rank > 0 && smax > 0.0) out.gap_ratio = out.singular_values(out.rank - 1) / smax;
  return out;
}

IndependenceCertificate independence_certificate(int n, Curvature kappa, const SWParams& params,
                                                 int samples, std::uint64_t seed, Chart chart,
                                                 int fixed_translation) {
  params.validate(n);
  if (fixed_translation < 1 || fixed_translation > n)
    throw ConfigError("fixed translation index must be in 1..N");

  IndependenceCertificate cert;
  cert.n = n;
  cert.kappa = kappa.value();
  cert.chart = chart;
  cert.expected_rank = 2 * n - 1;
  if (params.degenerate())
    cert.warnings.push_back("degenerate beta: some beta_i = 0, the rank may drop below 2N-1");
  if (params.has_negative())
    cert.warnings.push_back("negative beta: the potential is not bounded below");

  std::vector<PhaseFunction> functions;
  for (int l = 2; l <= n; ++l) functions.push_back(q_up_function(l, params, kappa));
  for (int l = n - 1; l >= 2; --l) functions.push_back(q_down_function(l, params, kappa));
  functions.push_back(integral_function(IntegralId{0, fixed_translation}, params, kappa));
  functions.push_back(hamiltonian_function(params, kappa));
  for (const auto& f : functions) cert.functions.push_back(f.name());

  StateSampler sampler(n, kappa, chart, seed);
  int full = 0;
  cert.min_gap_ratio = samples > 0 ? 1.0 : 0.0;
  for (int t = 0; t < samples; ++t) {
    cert.states.push_back(sampler.next());
    RankSample sample = jacobian_rank(functions, cert.states.back(), cert.relative_threshold);
    if (sample.rank == cert.expected_rank) {
      ++full;
      cert.min_gap_ratio = std::min(cert.min_gap_ratio, sample.gap_ratio);
    }
    cert.max_rank = std::max(cert.max_rank, sample.rank);
    cert.samples.push_back(std::move(sample));
  }
  cert.full_rank_fraction = samples > 0 ? double(full) / samples : 0.0;
  cert.valid = samples > 0 && cert.full_rank_fraction >= 0.95 && cert.max_rank <= cert.expected_rank;
  return cert;
}

LimitReport euclidean_limit_check(int n, const SWParams& params, int trials, std::uint64_t seed) {
  params.validate(n);
  LimitReport report;
  report.n = n;
  report.trials = trials;
  report.kappas = {1e-4, 1e-6, 1e-8};
  report.deviations.assign(report.kappas.size(), 0.0);

  const auto ids = integral_ids(n);
  // Unit-scale states, |qᵢ| in [0.5, 1] and |pᵢ| ≤ 1: the O(κ) correction
  // grows like βᵢ/qᵢ², so states next to a wall would measure the wall.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(0.5, 1.0), unit(-1.0, 1.0);
  double scale = 0.0;
  for (int t = 0; t < trials; ++t) {
    PhaseState<double> state{Chart::Parallel, Eigen::VectorXd(n), Eigen::VectorXd(n)};
    for (int i = 0; i < n; ++i) {
      state.q(i) = std::copysign(magnitude(rng), unit(rng));
      state.p(i) = unit(rng);
    }
    std::vector<double> reference{flat::hamiltonian(state.q, state.p, params)};
    for (const auto& id : ids) reference.push_back(flat::integral(id, state.q, state.p, params));
    for (double v : reference) scale = std::max(scale, std::abs(v));

    auto deviation = [&](Curvature kappa) {
      double d = std::abs(hamiltonian(state, params, kappa) - reference[0]);
      for (std::size_t k = 0; k < ids.size(); ++k)
        d = worst_of(d, std::abs(integral(ids[k], state, params, kappa) - reference[k + 1]));
      return d;
    };
    for (std::size_t k = 0; k < report.kappas.size(); ++k)
      report.deviations[k] = worst_of(report.deviations[k], deviation(Curvature(report.kappas[k])));
    report.deviation_at_zero = worst_of(report.deviation_at_zero, deviation(Curvature(0.0)));
  }
  bool ratios_ok = true;
  for (std::size_t k = 0; k + 1 < report.deviations.size(); ++k) {
    const double ratio = report.deviations[k + 1] / report.deviations[k];
    report.ratios.push_back(ratio);
    ratios_ok = ratios_ok && std::abs(ratio - 1e-2) <= 1e-3;
  }
  report.passed = trials > 0 && report.deviations.back() < report.tolerance && ratios_ok &&
                  report.deviation_at_zero <= 1e-12 * std::max(1.0, scale);
  return report;
}

}  // namespace swk
