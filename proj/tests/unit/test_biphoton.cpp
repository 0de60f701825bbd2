#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "twophoton/biphoton.hpp"
#include "twophoton/errors.hpp"

using namespace twophoton;
using std::numbers::pi;

namespace {

constexpr double kA = 0.45e-3;
const OpticalConfig kCfg(800e-9, 0.5);

double rms(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(a.size()));
}

// Lens kernel written out independently of the library.
std::complex<double> kernel(double rx, double ry, double x0, double y0) {
  const double lambda = kCfg.wavelength(), f = kCfg.focal_length();
  const std::complex<double> pre = std::polar(1.0, 4 * pi * f / lambda) / std::complex<double>(0.0, lambda * f);
  return pre * std::polar(1.0, -2 * pi * (rx * x0 + ry * y0) / (lambda * f));
}

// Direct 4D midpoint sum for the Gaussian-correlated amplitude.
std::complex<double> brute_general(const TransverseVector& r1, const TransverseVector& r2, const ApertureMask& mask,
                                   double sc, double sb, double h, std::size_t n) {
  const double step = 2 * h / static_cast<double>(n);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = -h + (static_cast<double>(i) + 0.5) * step;
  std::complex<double> sum = 0.0;
  for (double x1 : c)
    for (double y1 : c) {
      if (!mask_transmittance(mask, {x1, y1})) continue;
      const auto k1 = kernel(r1.x, r1.y, x1, y1);
      for (double x2 : c)
        for (double y2 : c) {
          if (!mask_transmittance(mask, {x2, y2})) continue;
          const double dx = x1 - x2, dy = y1 - y2, sx = x1 + x2, sy = y1 + y2;
          const double corr =
              std::exp(-(dx * dx + dy * dy) / (2 * sc * sc)) * std::exp(-(sx * sx + sy * sy) / (8 * sb * sb));
          sum += k1 * kernel(r2.x, r2.y, x2, y2) * corr;
        }
    }
  return sum * std::pow(step, 4);
}

}  // namespace

TEST_CASE("source validation") {
  CHECK(BiphotonSource{}.is_ideal());
  CHECK_NOTHROW(BiphotonSource(GaussianCorrelated{1e-6, 1e-3}));
  CHECK_THROWS_AS(BiphotonSource(GaussianCorrelated{0.0, 1e-3}), InvalidArgument);
  CHECK_THROWS_AS(BiphotonSource(GaussianCorrelated{2e-3, 1e-3}), InvalidArgument);
}

TEST_CASE("quadrature validation") {
  const ApertureMask m(Circle{kA});
  CHECK(min_samples_per_axis(kA, 1.5e-3, kCfg) == 14);
  CHECK_NOTHROW(validate_quadrature({kA, 14}, m, kCfg, 1.5e-3));
  CHECK_THROWS_AS(validate_quadrature({kA, 13}, m, kCfg, 1.5e-3), ResolutionError);
  CHECK_THROWS_AS(validate_quadrature({0.4e-3, 64}, m, kCfg, 1e-3), InvalidArgument);
  CHECK_THROWS_AS(biphoton_amplitude_ideal({1.5e-3, 0}, {1.5e-3, 0}, m, kCfg, {kA, 13}), ResolutionError);
  CHECK(max_detector_radius({kA, 14}, kCfg) >= 1.5e-3);
}

TEST_CASE("ideal amplitude: trivial points") {
  const ApertureMask m(Circle{kA});
  const QuadratureSpec q{kA, 256};
  const Complex a0 = biphoton_amplitude_ideal({0, 0}, {0, 0}, m, kCfg, q);
  const double lf = kCfg.lambda_f();
  CHECK(std::abs(a0) * lf * lf == doctest::Approx(pi * kA * kA).epsilon(2e-3));
  for (double r : {1e-4, 3.3e-4, 1.2e-3}) {
    const Complex a = biphoton_amplitude_ideal({r, 0.2 * r}, {-r, -0.2 * r}, m, kCfg, q);
    CHECK(std::abs(a) == doctest::Approx(std::abs(a0)).epsilon(1e-12));
  }
  // |r1 + r2| at the mapped J1 root
  const double s = oracle::j1_first_zero() * lf / (2 * pi * kA);
  const Complex z = biphoton_amplitude_ideal({s / 2, 0}, {s / 2, 0}, m, kCfg, {kA, 512});
  CHECK(std::abs(z) / std::abs(a0) < 2e-3);
}

TEST_CASE("exchange symmetry, both source models") {
  const ApertureMask m(Circle{kA});
  const BiphotonSource gauss(GaussianCorrelated{kA / 10, 10 * kA});
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> c(-0.6e-3, 0.6e-3);
  for (int i = 0; i < 20; ++i) {
    const TransverseVector r1{c(rng), c(rng)}, r2{c(rng), c(rng)};
    const double a = coincidence_rate(r1, r2, m, BiphotonSource{}, kCfg, {kA, 96});
    const double b = coincidence_rate(r2, r1, m, BiphotonSource{}, kCfg, {kA, 96});
    CHECK(std::abs(a - b) <= 1e-10 * std::max(a, b));
    const double ga = coincidence_rate(r1, r2, m, gauss, kCfg, {kA, 40});
    const double gb = coincidence_rate(r2, r1, m, gauss, kCfg, {kA, 40});
    CHECK(std::abs(ga - gb) <= 1e-10 * std::max(ga, gb));
  }
}

TEST_CASE("ideal rate depends only on r1 + r2") {
  const ApertureMask m(DoubleSlit{60e-6, 250e-6, 0.5e-3});
  const QuadratureSpec q{0.3e-3, 96};
  const double r0 = coincidence_rate({0, 0}, {0, 0}, m, BiphotonSource{}, kCfg, q);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> c(-0.25e-3, 0.25e-3);
  for (int i = 0; i < 100; ++i) {
    const TransverseVector sum{2 * c(rng), 2 * c(rng)};
    const TransverseVector a{c(rng), c(rng)}, b{c(rng), c(rng)};
    const double ra = coincidence_rate(a, sum - a, m, BiphotonSource{}, kCfg, q);
    const double rb = coincidence_rate(b, sum - b, m, BiphotonSource{}, kCfg, q);
    REQUIRE(std::abs(ra - rb) <= 1e-9 * std::max({ra, rb, 1e-6 * r0}));
  }
}

TEST_CASE("coincidence rate is non-negative and maximal at the origin") {
  const ApertureMask m(Rectangle{0.2e-3, 0.3e-3});
  const BiphotonSource gauss(GaussianCorrelated{0.05e-3, 2e-3});
  const QuadratureSpec q{0.3e-3, 40};
  const double g0 = coincidence_rate({0, 0}, {0, 0}, m, gauss, kCfg, q);
  for (double r = 0.0; r < 1e-3; r += 0.05e-3) {
    const double g = coincidence_rate({r, 0}, {r, 0}, m, gauss, kCfg, q);
    CHECK(g >= 0.0);
    CHECK(g <= g0 * (1 + 1e-12));
  }
}

TEST_CASE("degenerate profile matches the closed-form transform") {
  const auto radii = linspace(0.0, 1.5e-3, 201);
  auto check_shape = [&](const ApertureMask& m, double half_extent, std::size_t n, auto transform) {
    const auto p = degenerate_profile(m, kCfg, radii, {half_extent, n});
    CHECK(p.values()[0] == 1.0);
    std::vector<double> ref(radii.size());
    const double t0 = transform(0.0);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double t = transform(kCfg.q_scale() * 2 * radii[i]) / t0;
      ref[i] = t * t;
    }
    return rms(p.values(), ref);
  };
  SUBCASE("circle") {
    const double e = check_shape(ApertureMask(Circle{kA}), kA, 512, [](double q) {
      return q == 0.0 ? 1.0 : 2 * oracle::j1_series(q * kA) / (q * kA);
    });
    CHECK(e <= 1e-3);
  }
  SUBCASE("double slit") {
    const double w = 50e-6, d = 200e-6;
    const double e = check_shape(ApertureMask(DoubleSlit{w, d, 0.4e-3}), 0.4e-3, 512,
                                 [&](double q) { return oracle::slit_pair_1d(w, d, q); });
    CHECK(e <= 1e-3);
  }
  SUBCASE("rectangle") {
    const double e = check_shape(ApertureMask(Rectangle{0.15e-3, 0.3e-3}), 0.3e-3, 512,
                                 [](double q) { return q == 0.0 ? 0.3e-3 : 2 * std::sin(q * 0.15e-3) / q; });
    CHECK(e <= 1e-3);
  }
}

TEST_CASE("degenerate profile: first zero at the mapped root") {
  const ApertureMask m(Circle{kA});
  const double r = oracle::j1_first_zero() * kCfg.lambda_f() / (4 * pi * kA);
  const std::vector<double> radii{0.0, r};
  const auto p = degenerate_profile(m, kCfg, radii, {kA, 512});
  CHECK(p.values()[0] == 1.0);
  CHECK(p.values()[1] < 1e-5);
}

TEST_CASE("grid refinement is stable once the bound holds") {
  const ApertureMask m(Circle{kA});
  const auto radii = linspace(0.0, 1.5e-3, 101);
  double previous = 1.0;
  for (std::size_t n : {256, 512}) {
    const auto a = degenerate_profile(m, kCfg, radii, {kA, n});
    const auto b = degenerate_profile(m, kCfg, radii, {kA, 2 * n});
    const double e = rms(a.values(), b.values());
    CHECK(e < 1e-4);
    CHECK(e < previous);
    previous = e;
  }
}

TEST_CASE("general amplitude against a brute-force 4D sum") {
  const ApertureMask m(Circle{kA});
  const double sc = kA / 4, sb = 2 * kA;
  const BiphotonSource src(GaussianCorrelated{sc, sb});
  // The global phase 4 pi f / lambda is ~8e6 rad, so compare moduli and
  // phases relative to the origin rather than raw complex values.
  const Complex lib0 = biphoton_amplitude_general({0, 0}, {0, 0}, m, src, kCfg, {kA, 10});
  const Complex ref0 = brute_general({0, 0}, {0, 0}, m, sc, sb, kA, 10);
  CHECK(std::abs(lib0) == doctest::Approx(std::abs(ref0)).epsilon(1e-12));
  for (auto [r1, r2] : {std::pair<TransverseVector, TransverseVector>{{1e-4, -2e-4}, {3e-4, 5e-5}},
                        {{-4e-4, 1e-4}, {-1e-4, -3e-4}},
                        {{2e-4, 2e-4}, {2e-4, 2e-4}}}) {
    const Complex lib = biphoton_amplitude_general(r1, r2, m, src, kCfg, {kA, 10});
    const Complex ref = brute_general(r1, r2, m, sc, sb, kA, 10);
    CHECK(std::abs(lib) == doctest::Approx(std::abs(ref)).epsilon(1e-12));
    const Complex lib_rel = lib * std::conj(lib0) / std::norm(lib0);
    const Complex ref_rel = ref * std::conj(ref0) / std::norm(ref0);
    CHECK(std::abs(lib_rel - ref_rel) <= 1e-9 * std::abs(ref_rel));
  }
}

TEST_CASE("general amplitude preconditions") {
  const ApertureMask m(Circle{kA});
  const BiphotonSource src(GaussianCorrelated{kA / 10, 10 * kA});
  CHECK_THROWS_AS(biphoton_amplitude_general({0, 0}, {0, 0}, m, BiphotonSource{}, kCfg, {kA, 16}), InvalidArgument);
  CHECK_THROWS_AS(biphoton_amplitude_general({0, 0}, {0, 0}, m, src, kCfg, {kA, 200}), BudgetError);
  CHECK_THROWS_AS(biphoton_amplitude_general({0, 0}, {0, 0}, m, src, kCfg, {kA, 20}, 20ULL * 20 * 20 * 20 - 1),
                  BudgetError);
  CHECK_NOTHROW(biphoton_amplitude_general({0, 0}, {0, 0}, m, src, kCfg, {kA, 20}, 20ULL * 20 * 20 * 20));
  CHECK_THROWS_AS(biphoton_amplitude_general({1.5e-3, 0}, {1.5e-3, 0}, m, src, kCfg, {kA, 12}), ResolutionError);
}

TEST_CASE("narrow correlation approaches the ideal profile") {
  const ApertureMask m(Circle{kA});
  const auto radii = linspace(0.0, 1.2e-3, 41);
  const QuadratureSpec q{kA, 120};
  const auto ideal = degenerate_profile(m, kCfg, radii, q);
  double previous = 1.0;
  for (double div : {5.0, 10.0, 30.0, 100.0}) {
    const auto g = degenerate_profile(m, BiphotonSource(GaussianCorrelated{kA / div, 10 * kA}), kCfg, radii, q);
    CHECK(g.values()[0] == 1.0);
    const double e = rms(g.values(), ideal.values());
    CHECK(e < previous);
    previous = e;
  }
  CHECK(previous < 0.01);
}

TEST_CASE("profile evaluation order does not change results") {
  const ApertureMask m(Circle{kA});
  const auto radii = linspace(0.0, 1e-3, 31);
  const auto full = degenerate_profile(m, kCfg, radii, {kA, 128});
  for (std::size_t i = 1; i < radii.size(); i += 7) {
    const std::vector<double> one{0.0, radii[i]};
    CHECK(degenerate_profile(m, kCfg, one, {kA, 128}).values()[1] == full.values()[i]);
  }
}

TEST_CASE("pixel-grid circle tracks the analytic circle") {
  const ApertureMask grid(rasterize_circle(kA, kA, 256));
  const ApertureMask circle(Circle{kA});
  const auto radii = linspace(0.0, 1e-3, 51);
  const auto a = degenerate_profile(grid, kCfg, radii, {kA, 256});
  const auto b = degenerate_profile(circle, kCfg, radii, {kA, 256});
  CHECK(rms(a.values(), b.values()) < 1e-12);
}
