#include "twophoton/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "twophoton/bessel.hpp"
#include "twophoton/errors.hpp"

namespace twophoton {

namespace {

double photons(AiryPattern p) { return static_cast<double>(static_cast<int>(p)); }

void require_radius(double a) {
  if (!(std::isfinite(a) && a > 0.0)) throw InvalidArgument("aperture radius must be finite and positive");
}

ScanProfile airy_profile(AiryPattern pattern, double a, const OpticalConfig& cfg, std::span<const double> radii) {
  require_radius(a);
  std::vector<double> values;
  values.reserve(radii.size());
  for (double r : radii) values.push_back(airy_kernel(airy_argument(pattern, a, cfg, r)));
  return ScanProfile({radii.begin(), radii.end()}, std::move(values), Normalization::PeakNormalized);
}

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

// Abscissa of the vertex of the parabola through three points.
double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (curvature == 0.0) return x1;
  const double vertex = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
  return std::clamp(vertex, x0, x2);
}

double refine(const ScanProfile& p, std::size_t i) {
  const auto x = p.positions();
  const auto y = p.values();
  if (i == 0 || i + 1 >= p.size()) return x[i];
  return parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
}

double crossing(double x0, double y0, double x1, double y1, double level) {
  return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

double airy_argument(AiryPattern pattern, double a, const OpticalConfig& cfg, double r) {
  return photons(pattern) * cfg.q_scale() * a * r;
}

double airy_first_zero_radius(AiryPattern pattern, double a, const OpticalConfig& cfg) {
  require_radius(a);
  return kBesselJ1FirstZero / (photons(pattern) * cfg.q_scale() * a);
}

ScanProfile classical_airy_profile(double a, const OpticalConfig& cfg, std::span<const double> radii) {
  return airy_profile(AiryPattern::Classical, a, cfg, radii);
}

ScanProfile quantum_airy_profile(double a, const OpticalConfig& cfg, std::span<const double> radii) {
  return airy_profile(AiryPattern::Quantum, a, cfg, radii);
}

FringeProfiles doubleslit_fringe_profiles(double width, double separation, const OpticalConfig& cfg,
                                          std::span<const double> positions) {
  if (!(std::isfinite(width) && std::isfinite(separation) && width > 0.0 && width < separation))
    throw InvalidArgument("double slit needs 0 < width < separation");
  const double k = std::numbers::pi / cfg.lambda_f();
  auto pattern = [&](double n) {
    std::vector<double> v;
    v.reserve(positions.size());
    for (double x : positions) {
      const double env = sinc(n * k * width * x);
      const double fringe = std::cos(n * k * separation * x);
      v.push_back(env * env * fringe * fringe);
    }
    return ScanProfile({positions.begin(), positions.end()}, std::move(v), Normalization::PeakNormalized);
  };
  return {pattern(1.0), pattern(2.0)};
}

double first_zero(const ScanProfile& profile, double threshold) {
  const auto y = profile.values();
  const std::size_t n = profile.size();
  std::size_t i = profile.peak_index() + 1;
  while (i < n && !(y[i] < threshold)) ++i;
  if (i >= n) throw NotFound("no sample below the zero threshold past the peak");
  while (i + 1 < n && y[i + 1] < y[i]) ++i;
  return refine(profile, i);
}

double fwhm(const ScanProfile& profile) {
  const auto x = profile.positions();
  const auto y = profile.values();
  const std::size_t n = profile.size();
  const std::size_t p = profile.peak_index();
  const double half = 0.5 * y[p];

  std::optional<double> right;
  for (std::size_t j = p + 1; j < n; ++j) {
    if (y[j] < half) {
      right = crossing(x[j - 1], y[j - 1], x[j], y[j], half);
      break;
    }
  }
  if (!right) throw NotFound("half-maximum crossing after the peak is outside the scan");

  for (std::size_t j = p; j-- > 0;) {
    if (y[j] < half) return *right - crossing(x[j + 1], y[j + 1], x[j], y[j], half);
  }
  if (p == 0 && x[0] == 0.0) return 2.0 * *right;
  throw NotFound("half-maximum crossing before the peak is outside the scan");
}

double fringe_period(const ScanProfile& profile) {
  const auto y = profile.values();
  const std::size_t p = profile.peak_index();
  const double center = refine(profile, p);

  std::optional<double> right;
  for (std::size_t j = p + 1; j + 1 < profile.size(); ++j) {
    if (y[j] > y[j - 1] && y[j] >= y[j + 1]) {
      right = refine(profile, j) - center;
      break;
    }
  }
  std::optional<double> left;
  for (std::size_t j = p; j-- > 1;) {
    if (y[j] > y[j + 1] && y[j] >= y[j - 1]) {
      left = center - refine(profile, j);
      break;
    }
  }
  if (left && right) return 0.5 * (*left + *right);
  if (right) return *right;
  if (left) return *left;
  throw NotFound("no side maximum found next to the main peak");
}

PatternMetrics measure_pattern(const ScanProfile& profile, double threshold) {
  PatternMetrics m;
  m.peak_position = refine(profile, profile.peak_index());
  m.first_zero_radius = first_zero(profile, threshold) - m.peak_position;
  m.fwhm = fwhm(profile);
  return m;
}

double resolution_ratio(const PatternMetrics& classical, const PatternMetrics& quantum) {
  if (!(std::isfinite(quantum.first_zero_radius) && quantum.first_zero_radius != 0.0) ||
      !std::isfinite(classical.first_zero_radius))
    throw InvalidMetrics("resolution ratio needs a finite, nonzero quantum first-zero radius");
  return classical.first_zero_radius / quantum.first_zero_radius;
}

}  // namespace twophoton
