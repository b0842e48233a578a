#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "oracles.hpp"
#include "swk/errors.hpp"
#include "swk/liealg.hpp"

using swk::Curvature;
using swk::GeneratorId;

namespace {

// Σ c·vector_rep(id) over bracket terms.
Eigen::MatrixXd combine(const std::vector<swk::BracketTerm>& terms, int n, Curvature k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (const auto& t : terms) m += t.coefficient * swk::vector_rep(t.id, n, k);
  return m;
}

}  // namespace

TEST_CASE("generator ids") {
  CHECK(swk::all_generators(4).size() == 10);
  CHECK(swk::all_generators(6).size() == 21);
  CHECK(GeneratorId::translation(1).name() == "P1");
  CHECK(GeneratorId::rotation(1, 2).name() == "J12");
  CHECK_THROWS_AS(GeneratorId::rotation(2, 2).validate(3), swk::ConfigError);
  CHECK_THROWS_AS(GeneratorId::translation(4).validate(3), swk::ConfigError);
  const auto gens = swk::all_generators(5);
  for (std::size_t a = 0; a < gens.size(); ++a) CHECK(swk::generator_index(gens[a], 5) == int(a));
}

TEST_CASE("structure constant values") {
  for (double k : {-1.0, 0.0, 0.5}) {
    const swk::StructureConstants sc2(2, Curvature(k));
    const auto& b = sc2.bracket(GeneratorId::translation(1), GeneratorId::translation(2));
    if (k == 0.0) {
      CHECK(b.empty());
    } else {
      REQUIRE(b.size() == 1);
      CHECK(b[0].id == GeneratorId::rotation(1, 2));
      CHECK(b[0].coefficient == k);
    }
    const swk::StructureConstants sc3(3, Curvature(k));
    const auto& r = sc3.bracket(GeneratorId::rotation(1, 2), GeneratorId::rotation(1, 3));
    REQUIRE(r.size() == 1);
    CHECK(r[0].id == GeneratorId::rotation(2, 3));
    CHECK(r[0].coefficient == 1.0);
  }
  CHECK_THROWS_AS(swk::StructureConstants(1, Curvature(1)), swk::ConfigError);
}

TEST_CASE("vector representation entries") {
  const Eigen::MatrixXd p1 = swk::vector_rep(GeneratorId::translation(1), 2, Curvature(1));
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 3);
  expected(0, 1) = -1;
  expected(1, 0) = 1;
  CHECK((p1 - expected).norm() == 0.0);
  for (double k : {-2.0, 0.0, 3.0}) {
    const Eigen::MatrixXd j = swk::vector_rep(GeneratorId::rotation(1, 2), 2, Curvature(k));
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(3, 3);
    e(1, 2) = -1;
    e(2, 1) = 1;
    CHECK((j - e).norm() == 0.0);
  }
}

TEST_CASE("matrix commutators reproduce the structure constants") {
  for (int n = 2; n <= 6; ++n) {
    for (double k : {-1.0, -0.1, 0.0, 0.1, 1.0}) {
      const Curvature kc(k);
      const swk::StructureConstants sc(n, kc);
      const Eigen::MatrixXd form = swk::ambient_form(n, kc);
      for (const auto& a : sc.basis()) {
        const Eigen::MatrixXd A = swk::vector_rep(a, n, kc);
        // Generators preserve the ambient quadratic form.
        REQUIRE((A.transpose() * form + form * A).cwiseAbs().maxCoeff() < 1e-14);
        for (const auto& b : sc.basis()) {
          const Eigen::MatrixXd B = swk::vector_rep(b, n, kc);
          const Eigen::MatrixXd comm = A * B - B * A;
          REQUIRE((comm - combine(sc.bracket(a, b), n, kc)).cwiseAbs().maxCoeff() < 1e-14);
          REQUIRE((combine(sc.bracket(a, b), n, kc) + combine(sc.bracket(b, a), n, kc))
                      .cwiseAbs()
                      .maxCoeff() == 0.0);
        }
      }
    }
  }
}

TEST_CASE("structure constants satisfy the Jacobi identity") {
  for (int n = 2; n <= 6; ++n) {
    for (double k : {-0.7, 0.0, 1.3}) {
      const swk::StructureConstants sc(n, Curvature(k));
      const auto& basis = sc.basis();
      // [X,[Y,Z]] expanded through the tables only.
      auto nested = [&](const GeneratorId& x, const GeneratorId& y, const GeneratorId& z) {
        std::map<GeneratorId, double> acc;
        for (const auto& inner : sc.bracket(y, z))
          for (const auto& outer : sc.bracket(x, inner.id))
            acc[outer.id] += inner.coefficient * outer.coefficient;
        return acc;
      };
      for (const auto& x : basis)
        for (const auto& y : basis)
          for (const auto& z : basis) {
            std::map<GeneratorId, double> total;
            for (const auto& [id, c] : nested(x, y, z)) total[id] += c;
            for (const auto& [id, c] : nested(y, z, x)) total[id] += c;
            for (const auto& [id, c] : nested(z, x, y)) total[id] += c;
            for (const auto& [id, c] : total) REQUIRE(std::abs(c) < 1e-14);
          }
    }
  }
}

TEST_CASE("one-parameter subgroups") {
  using std::numbers::pi;
  const Eigen::MatrixXd id = swk::exp_generator(GeneratorId::translation(1), 0.0, 3, Curvature(1));
  CHECK((id - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);

  const Eigen::MatrixXd r = swk::exp_generator(GeneratorId::rotation(1, 2), pi / 2, 2, Curvature(1));
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(3, 3);
  e(0, 0) = 1;
  e(1, 2) = -1;
  e(2, 1) = 1;
  CHECK((r - e).cwiseAbs().maxCoeff() < 1e-15);

  const Curvature km(-1);
  const Eigen::MatrixXd p2 = swk::exp_generator(GeneratorId::translation(2), 0.3, 3, km);
  const Eigen::MatrixXd series =
      oracle::expm_series(0.3 * swk::vector_rep(GeneratorId::translation(2), 3, km));
  CHECK((p2 - series).cwiseAbs().maxCoeff() < 1e-12);

  for (double k : {-1.0, 0.0, 0.4})
    for (const auto& g : swk::all_generators(4)) {
      const Curvature kc(k);
      const Eigen::MatrixXd m = swk::exp_generator(g, 0.7, 4, kc);
      const Eigen::MatrixXd ref = oracle::expm_series(0.7 * swk::vector_rep(g, 4, kc));
      REQUIRE((m - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Killing form") {
  const auto g3 = swk::killing_form(3, Curvature(1));
  CHECK(g3(0, 0) == doctest::Approx(-4.0).epsilon(1e-14));
  const auto g0 = swk::killing_form(3, Curvature(0));
  CHECK(std::abs(g0(0, 0)) < 1e-14);
  const auto g2 = swk::killing_form(2, Curvature(-5));
  const int j12 = swk::generator_index(GeneratorId::rotation(1, 2), 2);
  CHECK(g2(j12, j12) == doctest::Approx(-2.0).epsilon(1e-14));
  // Diagonal in this basis: translations -2(N-1)κ, rotations -2(N-1).
  for (int n = 2; n <= 5; ++n) {
    const double k = 0.3;
    const auto g = swk::killing_form(n, Curvature(k));
    const auto basis = swk::all_generators(n);
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const double expected =
            a != b ? 0.0 : (basis[a].is_translation() ? -2.0 * (n - 1) * k : -2.0 * (n - 1));
        REQUIRE(std::abs(g(a, b) - expected) < 1e-13);
      }
  }
}
