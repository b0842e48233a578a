#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "swk/phase.hpp"
#include "swk/sampling.hpp"

using swk::Chart;
using swk::Curvature;
using swk::GeneratorId;
using swk::PhaseState;
using std::numbers::pi;

namespace {

oracle::N4 fixture_from(const PhaseState<double>& s, double k) {
  oracle::N4 f{};
  f.k = k;
  for (int i = 1; i <= 4; ++i) {
    f.a[i] = s.q(i - 1);
    f.p[i] = s.p(i - 1);
  }
  return f;
}

}  // namespace

TEST_CASE("momenta from velocities") {
  const Eigen::Vector3d qdot(0.3, -1.0, 2.0);
  for (Chart chart : {Chart::Parallel}) {
    const swk::ChartPoint<double> q{chart, Eigen::Vector3d(0.2, 0.5, -0.9)};
    CHECK((swk::momenta_from_velocities(q, Eigen::VectorXd(qdot), Curvature(0)) - qdot).norm() == 0.0);
  }
  const swk::ChartPoint<double> polar{Chart::Polar, Eigen::Vector2d(pi / 2, 0.4)};
  const Eigen::VectorXd p =
      swk::momenta_from_velocities(polar, Eigen::VectorXd(Eigen::Vector2d(0.0, 3.0)), Curvature(1));
  CHECK(p(1) == doctest::Approx(3.0).epsilon(1e-15));

  for (Chart chart : {Chart::Parallel, Chart::Polar}) {
    swk::StateSampler sampler(4, Curvature(0.8), chart, 5);
    for (int t = 0; t < 200; ++t) {
      const auto s = sampler.next();
      const Eigen::VectorXd v = swk::velocities_from_momenta(s.point(), s.p, Curvature(0.8));
      const Eigen::VectorXd back = swk::momenta_from_velocities(s.point(), v, Curvature(0.8));
      REQUIRE((back - s.p).cwiseAbs().maxCoeff() < 1e-13 * std::max(1.0, s.p.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("kinetic energy") {
  const PhaseState<double> rest{Chart::Parallel, Eigen::Vector3d(0.1, 0.2, 0.3), Eigen::Vector3d::Zero()};
  CHECK(swk::kinetic_energy(rest, Curvature(1)) == 0.0);
  const PhaseState<double> flat{Chart::Parallel, Eigen::Vector3d(0.1, 0.2, 0.3),
                                Eigen::Vector3d(1.0, -2.0, 0.5)};
  CHECK(swk::kinetic_energy(flat, Curvature(0)) == doctest::Approx(0.5 * 5.25).epsilon(1e-15));

  swk::StateSampler sampler(3, Curvature(1), Chart::Parallel, 9);
  for (int t = 0; t < 500; ++t) {
    const auto s = sampler.next();
    const auto polar = swk::convert_state(s, Chart::Polar, Curvature(1));
    REQUIRE(std::abs(swk::kinetic_energy(s, Curvature(1)) - swk::kinetic_energy(polar, Curvature(1))) <
            1e-11);
  }
}

TEST_CASE("parallel realization examples") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double k : {-1.0, 0.0, 1.0}) {
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd a(3), p(3);
      for (int i = 0; i < 3; ++i) {
        a(i) = u(rng);
        p(i) = u(rng);
      }
      const PhaseState<double> s{Chart::Parallel, a, p};
      REQUIRE(swk::parallel_generator(GeneratorId::translation(1), s, Curvature(k)) ==
              doctest::Approx(p(0)).epsilon(1e-15));
    }
  }
  const PhaseState<double> s{Chart::Parallel, Eigen::Vector3d(0.3, -1.4, 2.2),
                             Eigen::Vector3d(0.7, 1.9, -0.6)};
  const Curvature k0(0);
  for (int i = 1; i <= 3; ++i) {
    CHECK(swk::parallel_generator(GeneratorId::translation(i), s, k0) == s.p(i - 1));
    for (int j = i + 1; j <= 3; ++j)
      CHECK(swk::parallel_generator(GeneratorId::rotation(i, j), s, k0) ==
            s.q(i - 1) * s.p(j - 1) - s.q(j - 1) * s.p(i - 1));
  }
}

TEST_CASE("N = 4 generator fixtures") {
  for (double k : {-1.0, 1.0}) {
    const Curvature kc(k);
    swk::StateSampler sampler(4, kc, Chart::Parallel, 77);
    for (int t = 0; t < 200; ++t) {
      const auto s = sampler.next();
      const auto f = fixture_from(s, k);
      auto gen = [&](const GeneratorId& id) { return swk::generator_value(id, s, kc); };
      using G = GeneratorId;
      REQUIRE(std::abs(gen(G::translation(1)) - f.P1()) < 1e-13);
      REQUIRE(std::abs(gen(G::translation(2)) - f.P2()) < 1e-13);
      REQUIRE(std::abs(gen(G::translation(3)) - f.P3()) < 1e-13);
      REQUIRE(std::abs(gen(G::translation(4)) - f.P4()) < 1e-13);
      REQUIRE(std::abs(gen(G::rotation(1, 2)) - f.J12()) < 1e-13);
      REQUIRE(std::abs(gen(G::rotation(1, 3)) - f.J13()) < 1e-13);
      REQUIRE(std::abs(gen(G::rotation(1, 4)) - f.J14()) < 1e-13);
      REQUIRE(std::abs(gen(G::rotation(2, 3)) - f.J23()) < 1e-13);
      REQUIRE(std::abs(gen(G::rotation(2, 4)) - f.J24()) < 1e-13);
      REQUIRE(std::abs(gen(G::rotation(3, 4)) - f.J34()) < 1e-13);
    }
  }
}

TEST_CASE("polar realization examples") {
  const double r = 0.9, th = 1.2, pr = 0.4, pt = -1.3;
  const PhaseState<double> s{Chart::Polar, Eigen::Vector2d(r, th), Eigen::Vector2d(pr, pt)};
  const double expected = std::cos(th) * pr - std::sin(th) / std::tan(r) * pt;
  CHECK(swk::polar_generator(GeneratorId::translation(1), s, Curvature(1)) ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(swk::realize_ambient(GeneratorId::translation(1), s, Curvature(1)) ==
        doctest::Approx(expected).epsilon(1e-13));

  const PhaseState<double> still{Chart::Polar, Eigen::Vector3d(0.7, 1.0, -2.0), Eigen::Vector3d::Zero()};
  for (const auto& id : swk::all_generators(3)) {
    CHECK(swk::polar_generator(id, still, Curvature(1)) == 0.0);
    CHECK(swk::realize_ambient(id, still, Curvature(1)) == 0.0);
  }
}

TEST_CASE("ambient realization examples") {
  const PhaseState<double> s{Chart::Parallel, Eigen::Vector3d(0.3, -1.4, 2.2),
                             Eigen::Vector3d(0.7, 1.9, -0.6)};
  for (int i = 1; i <= 3; ++i)
    CHECK(swk::realize_ambient(GeneratorId::translation(i), s, Curvature(0)) ==
          doctest::Approx(s.p(i - 1)).epsilon(1e-15));

  for (int n = 2; n <= 5; ++n)
    for (double k : {-1.0, 0.0, 1.0}) {
      const Curvature kc(k);
      swk::StateSampler sampler(n, kc, Chart::Parallel, 100 + n);
      for (int t = 0; t < 10000 / 6; ++t) {
        const auto st = sampler.next();
        for (const auto& id : swk::all_generators(n))
          REQUIRE(std::abs(swk::parallel_generator(id, st, kc) - swk::realize_ambient(id, st, kc)) <
                  1e-11);
      }
    }
}

TEST_CASE("three-way agreement, linearity and the Casimir") {
  for (int n = 2; n <= 5; ++n)
    for (double k : {-1.0, 0.0, 1.0}) {
      const Curvature kc(k);
      swk::StateSampler sampler(n, kc, Chart::Parallel, 200 + n);
      for (int t = 0; t < 1000; ++t) {
        const auto st = sampler.next();
        const auto polar = swk::convert_state(st, Chart::Polar, kc);
        PhaseState<double> scaled = st;
        scaled.p *= 2.5;
        for (const auto& id : swk::all_generators(n)) {
          const double par = swk::parallel_generator(id, st, kc);
          REQUIRE(std::abs(par - swk::polar_generator(id, polar, kc)) < 1e-11);
          REQUIRE(std::abs(swk::polar_generator(id, polar, kc) - swk::realize_ambient(id, polar, kc)) <
                  1e-11);
          REQUIRE(std::abs(swk::parallel_generator(id, scaled, kc) - 2.5 * par) <
                  1e-14 * std::max(1.0, std::abs(par)));
        }
        const double two_t = 2.0 * swk::kinetic_energy(st, kc);
        REQUIRE(std::abs(swk::casimir_value(st, kc) - two_t) < 1e-11);
        REQUIRE(std::abs(swk::casimir_value(polar, kc) - two_t) < 1e-11);
      }
    }
}

TEST_CASE("Casimir pair convention") {
  // Summing rotations over ordered pairs doubles the κ term and breaks the identity.
  swk::StateSampler sampler(2, Curvature(1), Chart::Parallel, 4);
  const auto st = sampler.next();
  const double j = swk::generator_value(GeneratorId::rotation(1, 2), st, Curvature(1));
  const double two_t = 2.0 * swk::kinetic_energy(st, Curvature(1));
  CHECK(std::abs(swk::casimir_value(st, Curvature(1)) - two_t) < 1e-12);
  CHECK(std::abs(swk::casimir_value(st, Curvature(1)) + j * j - two_t) > 1e-6);
}

TEST_CASE("realized generator objects") {
  const auto gens = swk::realize_all(3, Curvature(0.5), Chart::Polar);
  REQUIRE(gens.size() == 6);
  swk::StateSampler sampler(3, Curvature(0.5), Chart::Polar, 8);
  const auto st = sampler.next();
  for (const auto& g : gens) {
    CHECK(g.chart == Chart::Polar);
    CHECK(g(st) == swk::polar_generator(g.id, st, Curvature(0.5)));
  }
}
