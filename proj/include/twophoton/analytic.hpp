#pragma once

#include <span>

#include "twophoton/optics.hpp"
#include "twophoton/profile.hpp"

namespace twophoton {

/// Number of photons sharing the detected spot: one for ordinary intensity
/// detection, two for coincidence detection of an entangled pair.
enum class AiryPattern { Classical = 1, Quantum = 2 };

/// Argument of airy_kernel for a circular aperture of radius `a` at
/// back-focal-plane radius r: photons · 2π·a·r/(λf).
double airy_argument(AiryPattern pattern, double a, const OpticalConfig& cfg, double r);

/// Radius of the first dark ring: 3.8317·λf/(photons · 2π·a).
double airy_first_zero_radius(AiryPattern pattern, double a, const OpticalConfig& cfg);

/// Conventional Airy disk, airy_kernel(2π·a·r/(λf)).
ScanProfile classical_airy_profile(double a, const OpticalConfig& cfg, std::span<const double> radii);

/// Two-photon Airy disk, airy_kernel(2π·2a·r/(λf)).
ScanProfile quantum_airy_profile(double a, const OpticalConfig& cfg, std::span<const double> radii);

struct FringeProfiles {
  ScanProfile classical;
  ScanProfile quantum;
};

/// Idealized 1D double-slit patterns (infinite slit height):
///   classical  sinc²(π w x/(λf)) · cos²(π d x/(λf))
///   quantum    the same with both spatial frequencies doubled.
FringeProfiles doubleslit_fringe_profiles(double width, double separation, const OpticalConfig& cfg,
                                          std::span<const double> positions);

struct PatternMetrics {
  double first_zero_radius = 0.0;
  double fwhm = 0.0;
  double peak_position = 0.0;
};

/// Position of the first minimum past the peak: the first sample below
/// `threshold` starts a descent to the local minimum, refined by a parabola
/// through the three samples around it. Throws NotFound when no sample past
/// the peak drops below the threshold.
double first_zero(const ScanProfile& profile, double threshold = 1e-3);

/// Full width at half maximum with linear interpolation of the crossings.
/// A radial cut whose peak is the first sample at position 0 is treated as
/// even, giving twice the outer crossing. Throws NotFound when a crossing
/// is not bracketed by the scan.
double fwhm(const ScanProfile& profile);

/// Mean distance from the main peak to the nearest refined local maximum on
/// each side. Throws NotFound when no side lobe is present.
double fringe_period(const ScanProfile& profile);

/// First zero measured relative to the peak, FWHM and peak position.
PatternMetrics measure_pattern(const ScanProfile& profile, double threshold = 1e-3);

/// classical.first_zero_radius / quantum.first_zero_radius.
double resolution_ratio(const PatternMetrics& classical, const PatternMetrics& quantum);

}  // namespace twophoton
