#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "swk/dual.hpp"
#include "swk/errors.hpp"
#include "swk/ktrig.hpp"

using swk::Curvature;
using std::numbers::pi;

TEST_CASE("curvature classification") {
  CHECK(Curvature(2.0).sign() == swk::CurvatureSign::Positive);
  CHECK(Curvature(0.0).sign() == swk::CurvatureSign::Zero);
  CHECK(Curvature(-0.5).sign() == swk::CurvatureSign::Negative);
  CHECK_THROWS_AS(Curvature(std::nan("")), swk::ConfigError);
  CHECK_THROWS_AS(Curvature{std::numeric_limits<double>::infinity()}, swk::ConfigError);
}

TEST_CASE("cos_k values") {
  CHECK(swk::cos_k(Curvature(0), 3.7) == 1.0);
  CHECK(swk::cos_k(Curvature(1), pi) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(swk::cos_k(Curvature(-1), 1.0) == doctest::Approx(1.5430806348152437).epsilon(1e-15));
}

TEST_CASE("sin_k values") {
  CHECK(swk::sin_k(Curvature(0), 2.5) == 2.5);
  CHECK(swk::sin_k(Curvature(1), pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(swk::sin_k(Curvature(4), pi / 4) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("versin_k values") {
  CHECK(swk::versin_k(Curvature(0), 3.0) == 4.5);
  CHECK(swk::versin_k(Curvature(1), 0.0) == 0.0);
  const double v = swk::versin_k(Curvature(1e-12), 1.0);
  CHECK(std::abs(v - 0.5) / 0.5 < 1e-9);
  CHECK(std::abs(v - static_cast<double>(oracle::V_series(1e-12L, 1.0L))) < 1e-15);
}

TEST_CASE("tan_k values and pole") {
  CHECK(swk::tan_k(Curvature(0), 7.0) == 7.0);
  CHECK(swk::tan_k(Curvature(1), pi / 4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(swk::tan_k(Curvature(-1), 10.0) == doctest::Approx(0.99999999587769273).epsilon(1e-15));
  CHECK_THROWS_AS(swk::tan_k(Curvature(1), pi / 2), swk::SingularityError);
}

TEST_CASE("branch formulas agree with the long double oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> kd(-2.0, 2.0), xd(-2.0, 2.0);
  for (int t = 0; t < 2000; ++t) {
    const double k = kd(rng), x = xd(rng);
    const Curvature kc(k);
    CHECK(std::abs(swk::cos_k(kc, x) - static_cast<double>(oracle::C(k, x))) < 1e-13);
    CHECK(std::abs(swk::sin_k(kc, x) - static_cast<double>(oracle::S(k, x))) < 1e-13);
  }
}

TEST_CASE("series region matches a long series and is continuous at the switch") {
  for (double k : {-3.0, -1e-6, 1e-9, 0.5, 2.0}) {
    const Curvature kc(k);
    const double edge = std::sqrt(1e-4 / std::abs(k));
    for (double x : {edge * 0.999999, edge * 1.000001, edge * 0.3}) {
      CHECK(std::abs(swk::versin_k(kc, x) - static_cast<double>(oracle::V_series(k, x))) <
            1e-15 * std::max(1.0, x * x));
      CHECK(std::abs(swk::cos_k(kc, x) - static_cast<double>(oracle::C(k, x))) < 2e-16);
    }
  }
}

TEST_CASE("fundamental identities on random arguments") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> kd(-1.0, 1.0), xd(-2.0, 2.0);
  for (int t = 0; t < 10000; ++t) {
    const double k = kd(rng), x = xd(rng);
    const Curvature kc(k);
    const double c = swk::cos_k(kc, x), s = swk::sin_k(kc, x), v = swk::versin_k(kc, x);
    REQUIRE(std::abs(c * c + k * s * s - 1.0) < 1e-13);
    REQUIRE(std::abs(c - (1.0 - k * v)) < 1e-13);
    // Double-angle identity for S.
    REQUIRE(std::abs(swk::sin_k(kc, 2 * x) - 2 * s * c) < 1e-12 * std::max(1.0, std::abs(s * c)));
  }
}

TEST_CASE("derivatives match finite differences and dual numbers") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> kd(-1.0, 1.0), xd(-1.2, 1.2);
  for (int t = 0; t < 2000; ++t) {
    const double k = kd(rng), x = xd(rng);
    const Curvature kc(k);
    const double c = swk::cos_k(kc, x), s = swk::sin_k(kc, x);
    const double dc = oracle::central_diff([&](double y) { return swk::cos_k(kc, y); }, x);
    const double ds = oracle::central_diff([&](double y) { return swk::sin_k(kc, y); }, x);
    const double dv = oracle::central_diff([&](double y) { return swk::versin_k(kc, y); }, x);
    const double dt = oracle::central_diff([&](double y) { return swk::tan_k(kc, y); }, x);
    REQUIRE(std::abs(dc + k * s) < 1e-7);
    REQUIRE(std::abs(ds - c) < 1e-7);
    REQUIRE(std::abs(dv - s) < 1e-7);
    REQUIRE(std::abs(dt - 1.0 / (c * c)) < 1e-7 * std::max(1.0, 1.0 / (c * c)));

    const swk::Dual xd1(x, 1.0);
    REQUIRE(std::abs(swk::cos_k(kc, xd1).eps + k * s) < 1e-13);
    REQUIRE(std::abs(swk::sin_k(kc, xd1).eps - c) < 1e-13);
    REQUIRE(std::abs(swk::versin_k(kc, xd1).eps - s) < 1e-13);
  }
}
