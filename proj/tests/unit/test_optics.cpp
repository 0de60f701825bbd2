#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "twophoton/errors.hpp"
#include "twophoton/optics.hpp"

using namespace twophoton;

TEST_CASE("optical config validation") {
  CHECK_NOTHROW(OpticalConfig(800e-9, 0.5));
  CHECK_THROWS_AS(OpticalConfig(0.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(OpticalConfig(800e-9, -1.0), InvalidArgument);
  CHECK_THROWS_AS(OpticalConfig(std::nan(""), 0.5), InvalidArgument);
  const OpticalConfig cfg(800e-9, 0.5);
  CHECK(cfg.lambda_f() == doctest::Approx(4e-7));
  CHECK(cfg.q_scale() == doctest::Approx(2 * std::numbers::pi / 4e-7));
}

TEST_CASE("transverse vector arithmetic") {
  const TransverseVector a{3, 4}, b{1, -2};
  CHECK(a.norm() == 5.0);
  CHECK(a.dot(b) == -5.0);
  CHECK((a + b) == TransverseVector{4, 2});
  CHECK((a - b) == TransverseVector{2, 6});
  CHECK((a * 2.0) == TransverseVector{6, 8});
}

TEST_CASE("lens kernel modulus is 1/(lambda f)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-2e-3, 2e-3);
  std::uniform_real_distribution<double> lam(400e-9, 1600e-9), foc(0.05, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const OpticalConfig cfg(lam(rng), foc(rng));
    const Complex h = lens_kernel({coord(rng), coord(rng)}, {coord(rng), coord(rng)}, cfg);
    REQUIRE(std::abs(h) * cfg.lambda_f() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("lens kernel phase at orthogonal arguments") {
  const OpticalConfig cfg(800e-9, 0.5);
  const double expected = std::remainder(4 * std::numbers::pi * 0.5 / 800e-9 - std::numbers::pi / 2, 2 * std::numbers::pi);
  for (auto [r, r0] : {std::pair<TransverseVector, TransverseVector>{{0, 0}, {1e-3, 2e-3}},
                       {{1e-3, 0}, {0, 5e-4}}}) {
    const Complex h = lens_kernel(r, r0, cfg);
    CHECK(std::remainder(std::arg(h) - expected, 2 * std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-6));
  }
}

TEST_CASE("lens kernel depends on r and r0 only through their dot product") {
  const OpticalConfig cfg(800e-9, 0.5);
  const Complex a = lens_kernel({1e-3, 2e-4}, {3e-4, -1e-4}, cfg);
  const Complex b = lens_kernel({3e-4, -1e-4}, {1e-3, 2e-4}, cfg);
  CHECK(std::abs(a - b) * cfg.lambda_f() < 1e-12);
  const Complex c = lens_kernel({-1e-3, -2e-4}, {-3e-4, 1e-4}, cfg);
  CHECK(std::abs(a - c) * cfg.lambda_f() < 1e-12);
}

TEST_CASE("non-finite coordinates are rejected") {
  const OpticalConfig cfg(800e-9, 0.5);
  CHECK_THROWS_AS(lens_kernel({std::nan(""), 0}, {0, 0}, cfg), DomainError);
}
