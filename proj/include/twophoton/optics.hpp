#pragma once

#include <complex>
#include <numbers>

namespace twophoton {

/// Scalar field amplitude. Polarization and mode labels are not carried.
using Complex = std::complex<double>;

/// Position in a plane transverse to the optical axis, in meters.
struct TransverseVector {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const TransverseVector&, const TransverseVector&) = default;
  TransverseVector operator+(const TransverseVector& o) const { return {x + o.x, y + o.y}; }
  TransverseVector operator-(const TransverseVector& o) const { return {x - o.x, y - o.y}; }
  TransverseVector operator*(double s) const { return {x * s, y * s}; }
  double dot(const TransverseVector& o) const { return x * o.x + y * o.y; }
  double norm() const;
};

/// Throws DomainError when either component is NaN or infinite.
void require_finite(const TransverseVector& v, const char* what);

/// Thin-lens geometry: wavelength and focal length, both in meters.
class OpticalConfig {
 public:
  OpticalConfig(double wavelength, double focal_length);

  double wavelength() const noexcept { return wavelength_; }
  double focal_length() const noexcept { return focal_length_; }
  double lambda_f() const noexcept { return wavelength_ * focal_length_; }

  /// 2π/(λf): maps a back-focal-plane coordinate to a spatial frequency.
  double q_scale() const noexcept { return 2.0 * std::numbers::pi / lambda_f(); }

  friend bool operator==(const OpticalConfig&, const OpticalConfig&) = default;

 private:
  double wavelength_;
  double focal_length_;
};

/// Front-to-back focal plane impulse response of a thin lens,
///   h_f(r, r0) = 1/(iλf) · exp(i4πf/λ) · exp(-i2π r·r0/(λf)).
/// The constant phase is kept even though it cancels in every rate.
Complex lens_kernel(const TransverseVector& r, const TransverseVector& r0, const OpticalConfig& cfg);

}  // namespace twophoton
