#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twophoton/config.hpp"

namespace twophoton {

struct PatternSummary {
  std::size_t points = 0;
  bool has_analytic = false;
};

/// Numeric degenerate coincidence profile of the configured mask and source
/// over the scan range. CSV: position_m,quantum_numeric and, for masks with
/// a closed-form transform, classical_analytic,quantum_analytic.
PatternSummary run_pattern(const RunConfig& config, std::ostream& csv);

struct CompareSummary {
  PatternMetrics classical;
  PatternMetrics quantum_analytic;
  PatternMetrics quantum_numeric;
  double ratio_analytic = 0.0;  // classical / quantum analytic first zero
  double ratio_numeric = 0.0;   // classical / quantum numeric first zero
  double rms_deviation = 0.0;   // numeric vs analytic quantum profile
  double rms_tolerance = 0.0;
  bool passed = false;
};

/// Classical and quantum analytic Airy profiles, the numeric biphoton
/// profile, and their metrics. CSV: position_m,classical,quantum_analytic,
/// quantum_numeric. `passed` is false when the numeric/analytic RMS
/// deviation exceeds the configured tolerance.
CompareSummary run_compare(const RunConfig& config, std::ostream& csv);

/// Writes the human-readable `key = value` summary block.
void write_compare_summary(std::ostream& out, const CompareSummary& summary);

/// Monte Carlo scan of the analytic pattern selected by experiment.pattern.
/// CSV: position_m,counts,expected,accidental. Throws ConfigError without a
/// detector section.
std::vector<CountRecord> run_scan(const RunConfig& config, std::ostream& csv);

/// Reads a scan CSV (position_m and counts columns).
std::vector<CountRecord> read_scan_csv(std::istream& in);
void write_scan_csv(std::ostream& out, const std::vector<CountRecord>& records);

/// Fits the pattern to the scan CSV named by fit.input and writes a one-row
/// CSV of parameters, uncertainties, covariance and reduced chi-square.
FitResult run_fit(const RunConfig& config, std::ostream& csv);
FitResult run_fit(const RunConfig& config, const std::vector<CountRecord>& records, std::ostream& csv);

void write_fit_csv(std::ostream& out, const FitResult& fit);

}  // namespace twophoton
