#include "twophoton/mask.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "twophoton/bessel.hpp"
#include "twophoton/errors.hpp"

namespace twophoton {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// sin(u)/u with the u = 0 limit.
double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

struct Extents {
  double half_extent;
  double radius;
};

Extents validate(const Circle& c) {
  if (!positive_finite(c.radius)) throw InvalidArgument("circle radius must be positive");
  return {c.radius, c.radius};
}

Extents validate(const DoubleSlit& s) {
  if (!positive_finite(s.width) || !positive_finite(s.separation) || !positive_finite(s.height))
    throw InvalidArgument("double slit width, separation and height must be positive");
  if (!(s.width < s.separation))
    throw InvalidArgument("double slit width must be smaller than the center separation");
  const double hx = 0.5 * (s.separation + s.width);
  const double hy = 0.5 * s.height;
  return {std::max(hx, hy), std::hypot(hx, hy)};
}

Extents validate(const Rectangle& r) {
  if (!positive_finite(r.half_x) || !positive_finite(r.half_y))
    throw InvalidArgument("rectangle half widths must be positive");
  return {std::max(r.half_x, r.half_y), std::hypot(r.half_x, r.half_y)};
}

Extents validate(const PixelGrid& g) {
  if (!positive_finite(g.pitch)) throw InvalidArgument("pixel pitch must be positive");
  if (g.width == 0 || g.height == 0) throw InvalidArgument("pixel grid must not be empty");
  if (g.cells.size() != g.width * g.height)
    throw InvalidArgument("pixel grid cell count does not match width*height");
  require_finite(g.origin, "pixel grid origin");
  for (auto c : g.cells)
    if (c > 1) throw InvalidArgument("pixel grid cells must be 0 or 1");
  const double x0 = g.origin.x;
  const double y0 = g.origin.y;
  const double x1 = x0 + g.pitch * static_cast<double>(g.width);
  const double y1 = y0 + g.pitch * static_cast<double>(g.height);
  const double hx = std::max(std::abs(x0), std::abs(x1));
  const double hy = std::max(std::abs(y0), std::abs(y1));
  return {std::max(hx, hy), std::hypot(hx, hy)};
}

}  // namespace

ApertureMask::ApertureMask(MaskShape shape) : shape_(std::move(shape)) {
  const Extents e = std::visit([](const auto& s) { return validate(s); }, shape_);
  half_extent_ = e.half_extent;
  support_radius_ = e.radius;
}

double ApertureMask::area() const {
  struct {
    double operator()(const Circle& c) const { return std::numbers::pi * c.radius * c.radius; }
    double operator()(const DoubleSlit& s) const { return 2.0 * s.width * s.height; }
    double operator()(const Rectangle& r) const { return 4.0 * r.half_x * r.half_y; }
    double operator()(const PixelGrid& g) const {
      const auto open = std::count(g.cells.begin(), g.cells.end(), std::uint8_t{1});
      return static_cast<double>(open) * g.pitch * g.pitch;
    }
  } visitor;
  return std::visit(visitor, shape_);
}

int mask_transmittance(const ApertureMask& mask, const TransverseVector& r0) {
  require_finite(r0, "r0");
  struct {
    const TransverseVector& p;
    int operator()(const Circle& c) const { return p.x * p.x + p.y * p.y <= c.radius * c.radius; }
    int operator()(const DoubleSlit& s) const {
      if (std::abs(p.y) > 0.5 * s.height) return 0;
      return std::abs(std::abs(p.x) - 0.5 * s.separation) <= 0.5 * s.width;
    }
    int operator()(const Rectangle& r) const {
      return std::abs(p.x) <= r.half_x && std::abs(p.y) <= r.half_y;
    }
    int operator()(const PixelGrid& g) const {
      const double u = std::floor((p.x - g.origin.x) / g.pitch);
      const double v = std::floor((p.y - g.origin.y) / g.pitch);
      if (u < 0.0 || v < 0.0 || u >= static_cast<double>(g.width) || v >= static_cast<double>(g.height))
        return 0;
      return g.at(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    }
  } visitor{r0};
  return std::visit(visitor, mask.shape());
}

Complex mask_fourier_analytic(const ApertureMask& mask, const TransverseVector& q) {
  require_finite(q, "q");
  struct {
    const TransverseVector& q;
    double operator()(const Circle& c) const {
      // 2πa·J1(|q|a)/|q| = πa²·jinc(|q|a)
      return std::numbers::pi * c.radius * c.radius * jinc(q.norm() * c.radius);
    }
    double operator()(const DoubleSlit& s) const {
      return s.width * sinc(0.5 * q.x * s.width) * 2.0 * std::cos(0.5 * q.x * s.separation) * s.height *
             sinc(0.5 * q.y * s.height);
    }
    double operator()(const Rectangle& r) const {
      return 2.0 * r.half_x * sinc(q.x * r.half_x) * 2.0 * r.half_y * sinc(q.y * r.half_y);
    }
    double operator()(const PixelGrid&) const {
      throw UnsupportedShape("pixel grids have no closed-form transform; use numeric quadrature");
    }
  } visitor{q};
  // All supported shapes are real and even, so the transform is real.
  return {std::visit(visitor, mask.shape()), 0.0};
}

PixelGrid read_pixel_grid(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("pixel grid: missing header line");
  std::istringstream hs(header);
  hs.imbue(std::locale::classic());
  long long width = 0;
  long long height = 0;
  PixelGrid grid;
  if (!(hs >> width >> height >> grid.pitch >> grid.origin.x >> grid.origin.y))
    throw IoError("pixel grid: header must be 'width height pitch origin_x origin_y'");
  std::string rest;
  if (hs >> rest) throw IoError("pixel grid: unexpected trailing header field '" + rest + "'");
  if (width <= 0 || height <= 0) throw IoError("pixel grid: width and height must be positive");
  grid.width = static_cast<std::size_t>(width);
  grid.height = static_cast<std::size_t>(height);
  grid.cells.assign(grid.width * grid.height, 0);

  std::string line;
  for (std::size_t i = 0; i < grid.height; ++i) {
    if (!std::getline(in, line)) throw IoError("pixel grid: expected " + std::to_string(grid.height) + " rows");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != grid.width)
      throw IoError("pixel grid: row " + std::to_string(i) + " has " + std::to_string(line.size()) +
                    " characters, expected " + std::to_string(grid.width));
    const std::size_t row = grid.height - 1 - i;
    for (std::size_t col = 0; col < grid.width; ++col) {
      const char c = line[col];
      if (c != '0' && c != '1') throw IoError("pixel grid: row " + std::to_string(i) + " has invalid character");
      grid.cells[row * grid.width + col] = static_cast<std::uint8_t>(c - '0');
    }
  }
  (void)ApertureMask{grid};
  return grid;
}

PixelGrid read_pixel_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pixel grid file '" + path + "'");
  return read_pixel_grid(in);
}

void write_pixel_grid(std::ostream& out, const PixelGrid& grid) {
  std::ostringstream hs;
  hs.imbue(std::locale::classic());
  hs.precision(17);
  hs << grid.width << ' ' << grid.height << ' ' << grid.pitch << ' ' << grid.origin.x << ' ' << grid.origin.y;
  out << hs.str() << '\n';
  std::string line(grid.width, '0');
  for (std::size_t i = 0; i < grid.height; ++i) {
    const std::size_t row = grid.height - 1 - i;
    for (std::size_t col = 0; col < grid.width; ++col) line[col] = grid.at(col, row) ? '1' : '0';
    out << line << '\n';
  }
}

PixelGrid rasterize_circle(double radius, double half_extent, std::size_t n) {
  if (!positive_finite(radius) || !positive_finite(half_extent) || n == 0)
    throw InvalidArgument("rasterize_circle: radius, half extent and size must be positive");
  PixelGrid g;
  g.pitch = 2.0 * half_extent / static_cast<double>(n);
  g.origin = {-half_extent, -half_extent};
  g.width = n;
  g.height = n;
  g.cells.assign(n * n, 0);
  const double r2 = radius * radius;
  for (std::size_t row = 0; row < n; ++row) {
    const double y = -half_extent + (static_cast<double>(row) + 0.5) * g.pitch;
    for (std::size_t col = 0; col < n; ++col) {
      const double x = -half_extent + (static_cast<double>(col) + 0.5) * g.pitch;
      g.cells[row * n + col] = x * x + y * y <= r2;
    }
  }
  return g;
}

}  // namespace twophoton
