#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "twophoton/optics.hpp"

namespace twophoton {

struct Circle {
  double radius = 0.0;
  friend bool operator==(const Circle&, const Circle&) = default;
};

/// Two slits of width `width` centered at x = ±separation/2, each
/// spanning |y| ≤ height/2.
struct DoubleSlit {
  double width = 0.0;
  double separation = 0.0;
  double height = 0.0;
  friend bool operator==(const DoubleSlit&, const DoubleSlit&) = default;
};

/// Centered rectangle |x| ≤ half_x, |y| ≤ half_y.
struct Rectangle {
  double half_x = 0.0;
  double half_y = 0.0;
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// Binary raster. Pixel (col, row) covers
///   x ∈ [origin.x + col·pitch, origin.x + (col+1)·pitch)
///   y ∈ [origin.y + row·pitch, origin.y + (row+1)·pitch)
/// with row 0 at the smallest y. Cells are stored row-major.
struct PixelGrid {
  TransverseVector origin;
  double pitch = 0.0;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> cells;

  bool at(std::size_t col, std::size_t row) const { return cells[row * width + col] != 0; }
  friend bool operator==(const PixelGrid&, const PixelGrid&) = default;
};

using MaskShape = std::variant<Circle, DoubleSlit, Rectangle, PixelGrid>;

/// Binary transmittance P(r0) with bounded support. Construction validates
/// the shape parameters.
class ApertureMask {
 public:
  explicit ApertureMask(MaskShape shape);

  const MaskShape& shape() const noexcept { return shape_; }

  /// Smallest h such that P = 0 outside the square |x|, |y| ≤ h.
  double bounding_half_extent() const noexcept { return half_extent_; }
  /// Radius of a disk centered at the origin containing the support.
  double support_radius() const noexcept { return support_radius_; }
  /// Transparent area in m².
  double area() const;

  friend bool operator==(const ApertureMask&, const ApertureMask&) = default;

 private:
  MaskShape shape_;
  double half_extent_ = 0.0;
  double support_radius_ = 0.0;
};

/// 1 inside the transparent region, 0 elsewhere. PixelGrid uses the
/// containing pixel; points outside the raster are opaque.
int mask_transmittance(const ApertureMask& mask, const TransverseVector& r0);

/// Closed-form P̃(q) = ∫ P(r0) exp(-i q·r0) d²r0 for Circle, DoubleSlit and
/// Rectangle. Throws UnsupportedShape for PixelGrid.
Complex mask_fourier_analytic(const ApertureMask& mask, const TransverseVector& q);

/// Reads the plain-text raster format:
///   width height pitch_m origin_x_m origin_y_m
///   `height` lines of `width` characters '0'/'1', first line = top row (largest y)
PixelGrid read_pixel_grid(std::istream& in);
PixelGrid read_pixel_grid_file(const std::string& path);
void write_pixel_grid(std::ostream& out, const PixelGrid& grid);

/// Rasterizes a centered circle onto a square grid of n×n pixels spanning
/// [-half_extent, half_extent]²; a pixel is transparent when its center is inside.
PixelGrid rasterize_circle(double radius, double half_extent, std::size_t n);

}  // namespace twophoton
