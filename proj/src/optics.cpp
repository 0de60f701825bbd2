#include "twophoton/optics.hpp"

#include <cmath>
#include <string>

#include "twophoton/errors.hpp"

namespace twophoton {

double TransverseVector::norm() const { return std::hypot(x, y); }

void require_finite(const TransverseVector& v, const char* what) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y))
    throw DomainError(std::string(what) + " has a non-finite component");
}

OpticalConfig::OpticalConfig(double wavelength, double focal_length)
    : wavelength_(wavelength), focal_length_(focal_length) {
  if (!(std::isfinite(wavelength) && wavelength > 0.0))
    throw InvalidArgument("wavelength must be finite and positive");
  if (!(std::isfinite(focal_length) && focal_length > 0.0))
    throw InvalidArgument("focal length must be finite and positive");
  const double q = q_scale();
  if (!(std::isfinite(q) && q > 0.0))
    throw InvalidArgument("2*pi/(wavelength*focal_length) is not a finite positive number");
}

Complex lens_kernel(const TransverseVector& r, const TransverseVector& r0, const OpticalConfig& cfg) {
  require_finite(r, "r");
  require_finite(r0, "r0");
  constexpr double pi = std::numbers::pi;
  // 1/i contributes -π/2 to the phase.
  const double phase = 4.0 * pi * cfg.focal_length() / cfg.wavelength() - 0.5 * pi -
                       2.0 * pi * r.dot(r0) / cfg.lambda_f();
  return std::polar(1.0 / cfg.lambda_f(), phase);
}

}  // namespace twophoton
