#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twophoton/analytic.hpp"
#include "twophoton/biphoton.hpp"
#include "twophoton/experiment.hpp"
#include "twophoton/mask.hpp"
#include "twophoton/optics.hpp"

namespace twophoton {

struct ScanRange {
  double r_min = 0.0;
  double r_max = 0.0;
  double step = 0.0;
  friend bool operator==(const ScanRange&, const ScanRange&) = default;
};

struct CompareSettings {
  double rms_tolerance = 1e-3;
  double zero_threshold = 1e-3;
  friend bool operator==(const CompareSettings&, const CompareSettings&) = default;
};

/// Fully validated run configuration. Lengths in meters, times in seconds.
struct RunConfig {
  RunConfig(OpticalConfig optical_config, ApertureMask aperture)
      : optical(optical_config), mask(std::move(aperture)) {}

  OpticalConfig optical;
  ApertureMask mask;
  std::string mask_file;                  // pixel_grid masks only
  std::optional<double> reference_radius; // circle a pixel grid approximates
  BiphotonSource source;
  QuadratureSpec quad;
  std::uint64_t sample_budget = kDefaultSampleBudget;
  std::optional<DetectorModel> detector;
  double background = 0.0;
  ScanRange scan;
  AiryPattern pattern = AiryPattern::Quantum;
  std::string fit_input;
  CompareSettings compare;
  std::string output_path;

  /// Radius of the circular aperture used by analytic patterns, if any.
  std::optional<double> aperture_radius() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses the line-oriented `section.key = value` format. Dimensional
/// values need a unit suffix (nm, um, mm, cm, m for lengths; ns, us, ms, s
/// for times); rates accept an optional `/s` or `Hz`. `#` starts a comment.
/// Relative pixel-grid paths are resolved against base_dir. Throws
/// ConfigError naming the offending key.
RunConfig parse_config(const std::string& text, const std::string& base_dir = "");
RunConfig parse_config_file(const std::string& path);

/// Serializes in the format read by parse_config, SI base units, with
/// shortest round-trip number formatting: parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

}  // namespace twophoton
