#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "twophoton/analytic.hpp"
#include "twophoton/errors.hpp"
#include "twophoton/optics.hpp"

namespace twophoton {

/// Scanning pinhole followed by a two-photon (coincidence) detector.
struct DetectorModel {
  double pinhole_radius = 25e-6;     // m; 0 means a point detector
  double pair_flux = 200.0;          // detected pairs/s at the pattern peak
  double dwell_time = 10.0;          // s per scan position
  double coincidence_window = 2e-9;  // s
  double singles_rate = 1e4;         // counts/s per detector
  std::uint64_t rng_seed = 1;

  /// Throws InvalidArgument on negative or non-finite fields, a zero dwell
  /// time, or a coincidence window not much shorter than the dwell time.
  void validate() const;

  /// singles² · window · dwell: mean accidental coincidences per position.
  double accidentals() const { return singles_rate * singles_rate * coincidence_window * dwell_time; }

  friend bool operator==(const DetectorModel&, const DetectorModel&) = default;
};

/// Peak-normalized radial pattern, value at back-focal-plane radius r.
using ProfileFn = std::function<double(double)>;

/// Analytic Airy pattern for a circular aperture of radius a.
ProfileFn airy_profile_fn(AiryPattern pattern, double a, const OpticalConfig& cfg);

/// Mean of profile(|r|) over a disk of the given radius centered at (x, 0).
/// A zero radius returns the pointwise value.
double pinhole_average(const ProfileFn& profile, double x, double pinhole_radius);

/// pair_flux·dwell·⟨profile over pinhole⟩ + accidentals + background, where
/// background is an additional flat mean count per position.
double expected_counts(double position, const DetectorModel& model, const ProfileFn& profile, double background = 0.0);

struct CountRecord {
  double position = 0.0;
  std::uint64_t coincidences = 0;
  double expected = 0.0;
  double accidental_estimate = 0.0;
  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

/// Means at or below this are drawn by inversion, above it by a rounded
/// normal approximation.
inline constexpr double kPoissonNormalCutoff = 500.0;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& rng);
/// Exact Poisson draw by sequential inversion of the CDF.
std::uint64_t poisson_inversion(double mean, std::mt19937_64& rng);
/// Poisson draw, switching to the normal approximation above the cutoff.
std::uint64_t poisson_draw(double mean, std::mt19937_64& rng);

/// One Poisson draw per position, in order, from a generator seeded with
/// model.rng_seed. Bitwise deterministic for identical inputs.
std::vector<CountRecord> simulate_scan(std::span<const double> positions, const DetectorModel& model,
                                       const ProfileFn& profile, double background = 0.0);

struct FitOptions {
  int max_iterations = 200;
  /// Pinhole radius used in the fit model; 0 fits the pointwise pattern.
  double pinhole_radius = 0.0;
};

struct FitResult {
  double amplitude = 0.0;
  double center_offset = 0.0;  // m
  double background = 0.0;
  double first_zero_estimate = 0.0;  // m, center_offset + model first-zero radius
  double first_zero_uncertainty = 0.0;
  std::array<std::array<double, 3>, 3> covariance{};  // (amplitude, center_offset, background)
  double chi_square = 0.0;
  double reduced_chi_square = 0.0;
  int iterations = 0;
};

class FitFailure : public Error {
 public:
  FitFailure(const std::string& what, FitResult last) : Error(ErrorCode::FitFailure, what), last_(last) {}
  const FitResult& last_iterate() const noexcept { return last_; }

 private:
  FitResult last_;
};

/// Weighted least squares of A·K(r − r_c) + B to counts, weights
/// 1/max(count, 1), by damped Gauss–Newton (Levenberg–Marquardt). K is the
/// Airy pattern of the given kind for aperture radius a, pinhole-averaged
/// when options.pinhole_radius > 0. Needs ≥ 10 points reaching past the
/// first zero; throws FitFailure after options.max_iterations.
FitResult fit_counts(std::span<const double> positions, std::span<const double> counts, double a,
                     const OpticalConfig& cfg, AiryPattern pattern, const FitOptions& options = {});

/// fit_counts over the coincidence counts of a simulated or measured scan.
FitResult fit_profile(std::span<const CountRecord> records, double a, const OpticalConfig& cfg, AiryPattern pattern,
                      const FitOptions& options = {});

/// Detector-plane positions from mirror rotation angles: 2·θ·lever_arm.
/// Throws DomainError for |θ| ≥ 0.05 rad.
std::vector<double> scan_positions_from_mirror(std::span<const double> angles, double lever_arm);

}  // namespace twophoton
