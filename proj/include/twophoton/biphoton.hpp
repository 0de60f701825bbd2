#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "twophoton/mask.hpp"
#include "twophoton/optics.hpp"
#include "twophoton/profile.hpp"

namespace twophoton {

/// C(r', r'') = δ(r' − r''): both photons leave the same source point.
struct IdealDelta {
  friend bool operator==(const IdealDelta&, const IdealDelta&) = default;
};

/// C(r', r'') = exp(−|r'−r''|²/(2σc²)) · exp(−|r'+r''|²/(8σb²)).
struct GaussianCorrelated {
  double correlation_width = 0.0;  // σc
  double beam_width = 0.0;         // σb
  friend bool operator==(const GaussianCorrelated&, const GaussianCorrelated&) = default;
};

class BiphotonSource {
 public:
  using Model = std::variant<IdealDelta, GaussianCorrelated>;

  BiphotonSource() = default;
  /// Throws InvalidArgument unless 0 < σc ≤ σb for the Gaussian model.
  explicit BiphotonSource(Model model);

  const Model& model() const noexcept { return model_; }
  bool is_ideal() const noexcept { return std::holds_alternative<IdealDelta>(model_); }

  /// Correlation function of the Gaussian model. Throws for IdealDelta,
  /// which has no pointwise value.
  double correlation(const TransverseVector& r1, const TransverseVector& r2) const;

  friend bool operator==(const BiphotonSource&, const BiphotonSource&) = default;

 private:
  Model model_ = IdealDelta{};
};

/// Uniform midpoint grid over the source plane square [-h, h]²: sample
/// centers at -h + (i + ½)·step with step = 2h / samples_per_axis.
struct QuadratureSpec {
  double half_extent = 0.0;
  std::size_t samples_per_axis = 0;

  double step() const { return 2.0 * half_extent / static_cast<double>(samples_per_axis); }
  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

/// Largest detector radius for which `quad` satisfies the phase-sampling
/// bound step ≤ λf/(4·r_max).
double max_detector_radius(const QuadratureSpec& quad, const OpticalConfig& cfg);

/// Smallest samples_per_axis meeting the phase-sampling bound for detector
/// coordinates up to r_max on a window of the given half extent.
std::size_t min_samples_per_axis(double half_extent, double r_max, const OpticalConfig& cfg);

/// Throws InvalidArgument when the window does not cover the mask and
/// ResolutionError when the grid step breaks the phase-sampling bound for
/// detector coordinates up to r_max.
void validate_quadrature(const QuadratureSpec& quad, const ApertureMask& mask, const OpticalConfig& cfg,
                         double r_max);

/// Default cap on the number of 4D source-pair samples (samples_per_axis⁴).
inline constexpr std::uint64_t kDefaultSampleBudget = 1'000'000'000;

/// The mask sampled on a quadrature grid; reusable across detector points.
class SampledAperture {
 public:
  SampledAperture(const ApertureMask& mask, const QuadratureSpec& quad);

  std::size_t samples() const noexcept { return n_; }
  double step() const noexcept { return step_; }
  std::span<const double> coordinates() const noexcept { return coords_; }
  /// Transmittance at sample (col, row) as 0.0/1.0.
  double open(std::size_t col, std::size_t row) const { return cells_[row * n_ + col]; }
  /// Row-major transmittance, row = y index.
  std::span<const double> cells() const noexcept { return cells_; }

 private:
  std::size_t n_;
  double step_;
  std::vector<double> coords_;
  std::vector<double> cells_;
};

/// ∫ P(r0)·h_f(r1, r0)·h_f(r2, r0) d²r0 by midpoint quadrature.
Complex biphoton_amplitude_ideal(const TransverseVector& r1, const TransverseVector& r2, const ApertureMask& mask,
                                 const OpticalConfig& cfg, const QuadratureSpec& quad);

/// ∫∫ P(r')P(r'')·h_f(r1, r')·h_f(r2, r'')·C(r', r'') d²r' d²r'' for a
/// Gaussian-correlated source. Throws BudgetError when samples_per_axis⁴
/// exceeds `budget` and InvalidArgument for an IdealDelta source.
Complex biphoton_amplitude_general(const TransverseVector& r1, const TransverseVector& r2, const ApertureMask& mask,
                                   const BiphotonSource& source, const OpticalConfig& cfg,
                                   const QuadratureSpec& quad, std::uint64_t budget = kDefaultSampleBudget);

/// |amplitude|², dispatching on the source model.
double coincidence_rate(const TransverseVector& r1, const TransverseVector& r2, const ApertureMask& mask,
                        const BiphotonSource& source, const OpticalConfig& cfg, const QuadratureSpec& quad,
                        std::uint64_t budget = kDefaultSampleBudget);

/// R(r)/R(0) along x with r1 = r2 = (r, 0). Radii must be strictly increasing.
ScanProfile degenerate_profile(const ApertureMask& mask, const OpticalConfig& cfg, std::span<const double> radii,
                               const QuadratureSpec& quad);
ScanProfile degenerate_profile(const ApertureMask& mask, const BiphotonSource& source, const OpticalConfig& cfg,
                               std::span<const double> radii, const QuadratureSpec& quad,
                               std::uint64_t budget = kDefaultSampleBudget);

}  // namespace twophoton
