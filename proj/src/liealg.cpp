#include "swk/liealg.hpp"

#include <algorithm>
#include <array>

#include "swk/errors.hpp"

namespace swk {

std::string GeneratorId::name() const {
  if (is_translation()) return "P" + std::to_string(i);
  if (i < 10 && j < 10) return "J" + std::to_string(i) + std::to_string(j);
  return "J" + std::to_string(i) + "_" + std::to_string(j);
}

void GeneratorId::validate(int n) const {
  if (is_translation()) {
    if (i < 1 || i > n) throw ConfigError("translation index out of range: " + name());
  } else if (!(1 <= i && i < j && j <= n)) {
    throw ConfigError("rotation indices must satisfy 1 <= i < j <= N: " + name());
  }
}

std::vector<GeneratorId> all_generators(int n) {
  std::vector<GeneratorId> out;
  out.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 1; i <= n; ++i) out.push_back(GeneratorId::translation(i));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back(GeneratorId::rotation(i, j));
  return out;
}

int generator_index(const GeneratorId& id, int n) {
  id.validate(n);
  if (id.is_translation()) return id.i - 1;
  // Rotations follow the N translations in row-major (i<j) order.
  int idx = n;
  for (int a = 1; a < id.i; ++a) idx += n - a;
  return idx + (id.j - id.i - 1);
}

namespace {

std::vector<BracketTerm> single(GeneratorId id, double c) { return {BracketTerm{id, c}}; }

// [a, b] following the listed relations; everything unlisted vanishes.
std::vector<BracketTerm> compute_bracket(const GeneratorId& a, const GeneratorId& b,
                                         double kappa) {
  using G = GeneratorId;
  if (a.is_translation() && b.is_translation()) {
    if (a.i == b.i) return {};
    if (a.i < b.i) return single(G::rotation(a.i, b.i), kappa);
    return single(G::rotation(b.i, a.i), -kappa);
  }
  if (a.is_rotation() && b.is_translation()) {
    if (b.i == a.i) return single(G::translation(a.j), 1.0);
    if (b.i == a.j) return single(G::translation(a.i), -1.0);
    return {};
  }
  if (a.is_translation() && b.is_rotation()) {
    auto out = compute_bracket(b, a, kappa);
    for (auto& t : out) t.coefficient = -t.coefficient;
    return out;
  }

  // Two rotations: non-zero only if they share exactly one index.
  std::array<int, 4> idx{a.i, a.j, b.i, b.j};
  std::sort(idx.begin(), idx.end());
  const auto last = std::unique(idx.begin(), idx.end());
  if (last - idx.begin() != 3) return {};
  const int i = idx[0], j = idx[1], k = idx[2];
  const G ij = G::rotation(i, j), ik = G::rotation(i, k), jk = G::rotation(j, k);
  if (a == ij && b == ik) return single(jk, 1.0);
  if (a == ik && b == ij) return single(jk, -1.0);
  if (a == ij && b == jk) return single(ik, -1.0);
  if (a == jk && b == ij) return single(ik, 1.0);
  if (a == ik && b == jk) return single(ij, 1.0);
  if (a == jk && b == ik) return single(ij, -1.0);
  return {};
}

}  // namespace

StructureConstants::StructureConstants(int n, Curvature kappa)
    : n_(n), kappa_(kappa), basis_(all_generators(n)) {
  if (n < 2) throw ConfigError("N must be >= 2");
  const std::size_t dim = basis_.size();
  table_.resize(dim * dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      auto terms = compute_bracket(basis_[a], basis_[b], kappa.value());
      // A zero κ still leaves [Pᵢ,Pⱼ] listed with coefficient 0; drop it.
      std::erase_if(terms, [](const BracketTerm& t) { return t.coefficient == 0.0; });
      table_[a * dim + b] = std::move(terms);
    }
}

const std::vector<BracketTerm>& StructureConstants::bracket(const GeneratorId& a,
                                                            const GeneratorId& b) const {
  const auto ia = static_cast<std::size_t>(generator_index(a, n_));
  const auto ib = static_cast<std::size_t>(generator_index(b, n_));
  return table_[ia * basis_.size() + ib];
}

StructureConstants structure_constants(int n, Curvature kappa) {
  return StructureConstants(n, kappa);
}

Eigen::MatrixXd vector_rep(const GeneratorId& id, int n, Curvature kappa) {
  id.validate(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  if (id.is_translation()) {
    m(0, id.i) = -kappa.value();
    m(id.i, 0) = 1.0;
  } else {
    m(id.i, id.j) = -1.0;
    m(id.j, id.i) = 1.0;
  }
  return m;
}

Eigen::MatrixXd ambient_form(int n, Curvature kappa) {
  Eigen::VectorXd d = Eigen::VectorXd::Constant(n + 1, kappa.value());
  d(0) = 1.0;
  return d.asDiagonal();
}

Eigen::MatrixXd adjoint_matrix(const StructureConstants& sc, const GeneratorId& x) {
  const auto& basis = sc.basis();
  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    for (const auto& term : sc.bracket(x, basis[static_cast<std::size_t>(b)]))
      ad(generator_index(term.id, sc.dimension()), b) += term.coefficient;
  return ad;
}

Eigen::MatrixXd killing_form(int n, Curvature kappa) {
  const StructureConstants sc(n, kappa);
  const auto& basis = sc.basis();
  const int dim = static_cast<int>(basis.size());
  std::vector<Eigen::MatrixXd> ads;
  ads.reserve(basis.size());
  for (const auto& g : basis) ads.push_back(adjoint_matrix(sc, g));
  Eigen::MatrixXd kf(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      kf(a, b) = (ads[static_cast<std::size_t>(a)] * ads[static_cast<std::size_t>(b)]).trace();
  return kf;
}

}  // namespace swk
