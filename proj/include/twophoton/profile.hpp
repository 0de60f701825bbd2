#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace twophoton {

enum class Normalization {
  PeakNormalized,  // values relative to the pattern's reference peak, all ≤ 1
  RawCounts,
};

/// Ordered samples of a 1D cut through a pattern.
class ScanProfile {
 public:
  /// Throws InvalidArgument unless positions are finite and strictly
  /// increasing, all lists have equal length (uncertainties may be empty),
  /// values and uncertainties are finite and non-negative, and a
  /// PeakNormalized profile has no value above 1 + 1e-12.
  ScanProfile(std::vector<double> positions, std::vector<double> values, Normalization normalization,
              std::vector<double> uncertainties = {});

  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> uncertainties() const noexcept { return uncertainties_; }
  Normalization normalization() const noexcept { return normalization_; }
  std::size_t size() const noexcept { return positions_.size(); }
  bool has_uncertainties() const noexcept { return !uncertainties_.empty(); }

  /// Index of the largest value (first one on ties).
  std::size_t peak_index() const;
  double peak_value() const { return values_[peak_index()]; }

 private:
  std::vector<double> positions_;
  std::vector<double> values_;
  std::vector<double> uncertainties_;
  Normalization normalization_;
};

/// min, min+step, ... up to max inclusive (max is included when it lies
/// within step·1e-9 of a grid point).
std::vector<double> uniform_grid(double min, double max, double step);

/// n evenly spaced points on [min, max], n ≥ 2.
std::vector<double> linspace(double min, double max, std::size_t n);

}  // namespace twophoton
