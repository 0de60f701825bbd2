#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracle.hpp"
#include "twophoton/bessel.hpp"
#include "twophoton/errors.hpp"

using namespace twophoton;

TEST_CASE("J1 matches the multiprecision series on [-50, 50]") {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = -50.0 + 100.0 * i / 9999.0;
    worst = std::max(worst, std::abs(bessel_j1(x) - oracle::j1_series(x)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("J1 around the series/asymptotic switch") {
  for (double x = 11.5; x <= 12.5; x += 1e-3) CHECK(std::abs(bessel_j1(x) - oracle::j1_series(x)) <= 1e-9);
}

TEST_CASE("J1 reference values") {
  CHECK(bessel_j1(0.0) == 0.0);
  CHECK(bessel_j1(1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-12));
  CHECK(std::abs(bessel_j1(kBesselJ1FirstZero)) < 1e-14);
  CHECK(kBesselJ1FirstZero == doctest::Approx(oracle::j1_first_zero()).epsilon(1e-14));
  CHECK(oracle::j1_first_zero() == doctest::Approx(3.8317059702075123).epsilon(1e-14));
  CHECK(std::abs(bessel_j1(oracle::j1_zero(3))) < 1e-12);
}

TEST_CASE("J1 is odd") {
  for (double x : {1e-9, 0.3, 2.0, 7.9, 8.1, 12.0, 12.5, 33.3, 1e4}) CHECK(bessel_j1(-x) == -bessel_j1(x));
}

TEST_CASE("J1 large argument follows the leading asymptote") {
  for (double x : {1e3, 1e5, 1e7}) {
    const double amp = std::sqrt(2.0 / (M_PI * x));
    const double lead = amp * std::cos(x - 0.75 * M_PI);
    // first correction term is 3/(8x) of the amplitude
    CHECK(std::abs(bessel_j1(x) - lead) < 0.4 / x * amp);
  }
}

TEST_CASE("airy kernel") {
  CHECK(airy_kernel(0.0) == 1.0);
  CHECK(jinc(0.0) == 1.0);
  CHECK(airy_kernel(1e-8) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(airy_kernel(oracle::airy_half_max()) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(oracle::airy_half_max() == doctest::Approx(1.616339948310703).epsilon(1e-12));
  CHECK(airy_kernel(kBesselJ1FirstZero) < 1e-28);
}

TEST_CASE("airy kernel is even, bounded and maximal only at the origin") {
  for (int i = 1; i <= 5000; ++i) {
    const double x = 50.0 * i / 5000.0;
    const double v = airy_kernel(x);
    REQUIRE(v == airy_kernel(-x));
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
  }
}

TEST_CASE("non-finite arguments are domain errors") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bessel_j1(nan), DomainError);
  CHECK_THROWS_AS(bessel_j1(-inf), DomainError);
  CHECK_THROWS_AS(airy_kernel(inf), DomainError);
  CHECK_THROWS_AS(jinc(nan), DomainError);
}
