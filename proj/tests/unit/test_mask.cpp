#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "twophoton/errors.hpp"
#include "twophoton/mask.hpp"

using namespace twophoton;
using std::numbers::pi;

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(ApertureMask(Circle{0.0}), InvalidArgument);
  CHECK_THROWS_AS(ApertureMask(Circle{-1e-3}), InvalidArgument);
  CHECK_THROWS_AS(ApertureMask(DoubleSlit{1e-4, 5e-5, 1e-3}), InvalidArgument);
  CHECK_THROWS_AS(ApertureMask(Rectangle{1e-3, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(ApertureMask(PixelGrid{{0, 0}, 1e-5, 2, 2, {1, 0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(ApertureMask(PixelGrid{{0, 0}, 1e-5, 2, 1, {1, 2}}), InvalidArgument);
}

TEST_CASE("circle transmittance") {
  const ApertureMask m(Circle{0.45e-3});
  CHECK(mask_transmittance(m, {0, 0}) == 1);
  CHECK(mask_transmittance(m, {0.44e-3, 0}) == 1);
  CHECK(mask_transmittance(m, {0.46e-3, 0}) == 0);
  CHECK(mask_transmittance(m, {0.32e-3, 0.32e-3}) == 0);
  CHECK(m.area() == doctest::Approx(pi * 0.45e-3 * 0.45e-3));
  CHECK(m.bounding_half_extent() == 0.45e-3);
}

TEST_CASE("double slit transmittance") {
  const ApertureMask m(DoubleSlit{50e-6, 200e-6, 1e-3});
  CHECK(mask_transmittance(m, {0, 0}) == 0);
  CHECK(mask_transmittance(m, {100e-6, 0}) == 1);
  CHECK(mask_transmittance(m, {-120e-6, 0.4e-3}) == 1);
  CHECK(mask_transmittance(m, {100e-6, 0.6e-3}) == 0);
  CHECK(mask_transmittance(m, {130e-6, 0}) == 0);
  CHECK(m.area() == doctest::Approx(2 * 50e-6 * 1e-3));
}

TEST_CASE("pixel grid lookup is nearest pixel and opaque outside") {
  // 3x2 grid, row 0 at the bottom
  const PixelGrid g{{-1.5e-4, -1e-4}, 1e-4, 3, 2, {1, 0, 0, 0, 1, 1}};
  const ApertureMask m(g);
  CHECK(mask_transmittance(m, {-1.4e-4, -0.9e-4}) == 1);
  CHECK(mask_transmittance(m, {-0.4e-4, -0.9e-4}) == 0);
  CHECK(mask_transmittance(m, {0.1e-4, 0.5e-4}) == 1);
  CHECK(mask_transmittance(m, {-1.4e-4, 0.5e-4}) == 0);
  CHECK(mask_transmittance(m, {2e-4, 0}) == 0);
  CHECK(mask_transmittance(m, {0, -1.1e-4}) == 0);
  CHECK(m.area() == doctest::Approx(3e-8));
}

TEST_CASE("transmittance is binary") {
  const ApertureMask m(rasterize_circle(1e-3, 1.2e-3, 40));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-2e-3, 2e-3);
  for (int i = 0; i < 1000; ++i) {
    const int p = mask_transmittance(m, {c(rng), c(rng)});
    REQUIRE((p == 0 || p == 1));
  }
}

TEST_CASE("transform at zero frequency is the open area") {
  for (const MaskShape& s : {MaskShape{Circle{0.45e-3}}, MaskShape{DoubleSlit{50e-6, 200e-6, 1e-3}},
                             MaskShape{Rectangle{2e-4, 3e-4}}}) {
    const ApertureMask m(s);
    const Complex v = mask_fourier_analytic(m, {0, 0});
    CHECK(v.real() == doctest::Approx(m.area()).epsilon(1e-14));
    CHECK(v.imag() == 0.0);
  }
}

TEST_CASE("circle transform zero and small-q limit") {
  const double a = 0.45e-3;
  const ApertureMask m(Circle{a});
  const double q0 = oracle::j1_first_zero() / a;
  CHECK(std::abs(mask_fourier_analytic(m, {q0, 0})) < 1e-14 * m.area());
  CHECK(std::abs(mask_fourier_analytic(m, {q0 / std::sqrt(2.0), q0 / std::sqrt(2.0)})) < 1e-14 * m.area());
  const Complex small = mask_fourier_analytic(m, {1e-6 / a, 0});
  CHECK(small.real() == doctest::Approx(pi * a * a).epsilon(1e-9));
}

TEST_CASE("circle transform against the series oracle") {
  const double a = 0.45e-3;
  const ApertureMask m(Circle{a});
  for (double qa : {0.5, 2.0, 5.5, 9.0, 20.0}) {
    const double ref = pi * a * a * 2 * oracle::j1_series(qa) / qa;
    CHECK(mask_fourier_analytic(m, {0, qa / a}).real() == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("double slit transform") {
  const double w = 50e-6, d = 200e-6, h = 1e-3;
  const ApertureMask m(DoubleSlit{w, d, h});
  CHECK(std::abs(mask_fourier_analytic(m, {pi / d, 0})) < 1e-12 * m.area());
  CHECK(std::abs(mask_fourier_analytic(m, {pi / d, 3e3})) < 1e-12 * m.area());
  for (double qx : {1e3, 7.7e3, 2.5e4, -4e4}) {
    const double ref = oracle::slit_pair_1d(w, d, qx) * h;
    CHECK(mask_fourier_analytic(m, {qx, 0}).real() == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("rectangle transform") {
  const ApertureMask m(Rectangle{2e-4, 3e-4});
  CHECK(std::abs(mask_fourier_analytic(m, {pi / 2e-4, 0})) < 1e-14 * m.area());
  const double qx = 1e4, qy = 2e3;
  const double ref = 2 * std::sin(qx * 2e-4) / qx * 2 * std::sin(qy * 3e-4) / qy;
  CHECK(mask_fourier_analytic(m, {qx, qy}).real() == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("conjugate symmetry of real masks") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> q(-5e4, 5e4);
  for (const MaskShape& s : {MaskShape{Circle{0.45e-3}}, MaskShape{DoubleSlit{50e-6, 200e-6, 1e-3}},
                             MaskShape{Rectangle{2e-4, 3e-4}}}) {
    const ApertureMask m(s);
    for (int i = 0; i < 200; ++i) {
      const TransverseVector k{q(rng), q(rng)};
      const Complex a = mask_fourier_analytic(m, k);
      const Complex b = mask_fourier_analytic(m, k * -1.0);
      REQUIRE(std::abs(a - std::conj(b)) <= 1e-14 * m.area());
    }
  }
}

TEST_CASE("pixel grids have no closed form") {
  const ApertureMask m(rasterize_circle(1e-3, 1e-3, 8));
  CHECK_THROWS_AS(mask_fourier_analytic(m, {0, 0}), UnsupportedShape);
}

TEST_CASE("pixel grid text format") {
  std::istringstream in("3 2 1e-4 -1.5e-4 -1e-4\n011\n100\n");
  const PixelGrid g = read_pixel_grid(in);
  CHECK(g.width == 3);
  CHECK(g.height == 2);
  CHECK(g.at(0, 0));   // bottom row is the last text line
  CHECK(!g.at(1, 0));
  CHECK(g.at(1, 1));
  CHECK(!g.at(0, 1));

  std::ostringstream out;
  write_pixel_grid(out, g);
  std::istringstream again(out.str());
  CHECK(read_pixel_grid(again) == g);

  const PixelGrid r = rasterize_circle(1e-3, 1.2e-3, 64);
  std::ostringstream rs;
  write_pixel_grid(rs, r);
  std::istringstream rin(rs.str());
  CHECK(read_pixel_grid(rin) == r);
}

TEST_CASE("pixel grid format errors") {
  for (const char* text : {"", "3 2 1e-4 0\n", "3 2 1e-4 0 0 9\n011\n100\n", "3 2 1e-4 0 0\n011\n",
                           "3 2 1e-4 0 0\n011\n10\n", "3 2 1e-4 0 0\n011\n1x0\n", "0 2 1e-4 0 0\n"}) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_pixel_grid(in), IoError);
  }
  CHECK_THROWS_AS(read_pixel_grid_file("/nonexistent/mask.txt"), IoError);
}

TEST_CASE("rasterized circle approaches the disk area") {
  const double a = 1e-3;
  const ApertureMask m(rasterize_circle(a, a, 400));
  CHECK(m.area() == doctest::Approx(pi * a * a).epsilon(5e-3));
}
