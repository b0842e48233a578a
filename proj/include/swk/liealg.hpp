#pragma once

#include <compare>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "swk/dual.hpp"
#include "swk/ktrig.hpp"

namespace swk {

/// Basis element of so_κ(N+1): a translation Pᵢ (= J₀ᵢ) or a rotation J_ij.
///
/// Indices are 1-based as in the usual basis {Pᵢ, J_ij}; raw ambient
/// matrix slots (0..N) never leak out of this type.
struct GeneratorId {
  enum class Kind { Translation, Rotation };

  Kind kind = Kind::Translation;
  int i = 1;
  int j = 0;  // unused for translations

  static GeneratorId translation(int i) { return {Kind::Translation, i, 0}; }
  static GeneratorId rotation(int i, int j) { return {Kind::Rotation, i, j}; }

  bool is_translation() const { return kind == Kind::Translation; }
  bool is_rotation() const { return kind == Kind::Rotation; }

  /// "P1", "J12", ... (indices above 9 are separated: "J10_11").
  std::string name() const;

  /// Throws ConfigError unless the indices are valid for dimension N.
  void validate(int n) const;

  auto operator<=>(const GeneratorId&) const = default;
};

/// All N(N+1)/2 generators in canonical order P₁..P_N, J₁₂, J₁₃, ..., J_{N-1,N}.
std::vector<GeneratorId> all_generators(int n);

/// Position of `id` in all_generators(n).
int generator_index(const GeneratorId& id, int n);

struct BracketTerm {
  GeneratorId id;
  double coefficient = 0.0;
};

/// Commutator table of so_κ(N+1) in the {Pᵢ, J_ij} basis.
///
/// Non-vanishing brackets (i<j<k):
///   [J_ij,J_ik] = J_jk,  [J_ij,J_jk] = -J_ik,  [J_ik,J_jk] = J_ij,
///   [J_ij,P_i]  = P_j,   [J_ij,P_j]  = -P_i,   [P_i,P_j]   = κ J_ij,
/// together with their antisymmetric counterparts.
class StructureConstants {
 public:
  StructureConstants(int n, Curvature kappa);

  int dimension() const { return n_; }
  Curvature curvature() const { return kappa_; }
  const std::vector<GeneratorId>& basis() const { return basis_; }

  /// Expansion of [a, b]; empty when the bracket vanishes.
  const std::vector<BracketTerm>& bracket(const GeneratorId& a, const GeneratorId& b) const;

 private:
  int n_;
  Curvature kappa_;
  std::vector<GeneratorId> basis_;
  std::vector<std::vector<BracketTerm>> table_;  // row-major, basis_ × basis_
};

StructureConstants structure_constants(int n, Curvature kappa);

/// (N+1)×(N+1) vector representation: Pᵢ = -κ e₀ᵢ + eᵢ₀, J_ij = -e_ij + e_ji.
Eigen::MatrixXd vector_rep(const GeneratorId& id, int n, Curvature kappa);

/// I_κ = diag(1, κ, ..., κ), the bilinear form preserved by SO_κ(N+1).
Eigen::MatrixXd ambient_form(int n, Curvature kappa);

/// One-parameter subgroup exp(x X) in closed form:
///   exp(x Pᵢ)   = I + Pᵢ Sκ(x) + Pᵢ² Vκ(x),
///   exp(x J_ij) = I + J_ij sin x + J_ij² (1 - cos x).
template <typename Scalar>
MatrixX<Scalar> exp_generator(const GeneratorId& id, const Scalar& x, int n, Curvature kappa) {
  using std::cos;
  using std::sin;
  const MatrixX<Scalar> x_mat = vector_rep(id, n, kappa).cast<Scalar>();
  const MatrixX<Scalar> x_sq = x_mat * x_mat;
  MatrixX<Scalar> out = MatrixX<Scalar>::Identity(n + 1, n + 1);
  if (id.is_translation()) {
    out += x_mat * sin_k(kappa, x) + x_sq * versin_k(kappa, x);
  } else {
    out += x_mat * sin(x) + x_sq * (Scalar(1.0) - cos(x));
  }
  return out;
}

/// Killing–Cartan form Trace(ad X · ad Y), indexed like all_generators(n).
Eigen::MatrixXd killing_form(int n, Curvature kappa);

/// Matrix of ad X in the all_generators(n) basis: column b holds [X, basis_b].
Eigen::MatrixXd adjoint_matrix(const StructureConstants& sc, const GeneratorId& x);

}  // namespace swk
