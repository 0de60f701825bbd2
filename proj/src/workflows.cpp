#include "twophoton/workflows.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "format.hpp"
#include "twophoton/errors.hpp"

namespace twophoton {

namespace {

using detail::format_double;

std::vector<double> scan_radii(const RunConfig& c) { return uniform_grid(c.scan.r_min, c.scan.r_max, c.scan.step); }

double require_aperture_radius(const RunConfig& c) {
  if (auto a = c.aperture_radius()) return *a;
  throw ConfigError("mask", "analytic Airy patterns need a circle mask or mask.pixel_grid.reference_radius");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    out.push_back(field);
  }
  return out;
}

double parse_double(const std::string& s, int line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw IoError("scan CSV line " + std::to_string(line) + ": '" + s + "' is not a number");
  return v;
}

}  // namespace

PatternSummary run_pattern(const RunConfig& config, std::ostream& csv) {
  const auto radii = scan_radii(config);
  const ScanProfile numeric =
      degenerate_profile(config.mask, config.source, config.optical, radii, config.quad, config.sample_budget);
  const bool analytic = !std::holds_alternative<PixelGrid>(config.mask.shape());

  csv << "position_m,quantum_numeric";
  if (analytic) csv << ",classical_analytic,quantum_analytic";
  csv << '\n';
  const double peak = analytic ? std::norm(mask_fourier_analytic(config.mask, {0.0, 0.0})) : 1.0;
  const double q = config.optical.q_scale();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    csv << format_double(radii[i]) << ',' << format_double(numeric.values()[i]);
    if (analytic) {
      const double classical = std::norm(mask_fourier_analytic(config.mask, {q * radii[i], 0.0})) / peak;
      const double quantum = std::norm(mask_fourier_analytic(config.mask, {2.0 * q * radii[i], 0.0})) / peak;
      csv << ',' << format_double(classical) << ',' << format_double(quantum);
    }
    csv << '\n';
  }
  return {radii.size(), analytic};
}

CompareSummary run_compare(const RunConfig& config, std::ostream& csv) {
  const double a = require_aperture_radius(config);
  const auto radii = scan_radii(config);
  const ScanProfile classical = classical_airy_profile(a, config.optical, radii);
  const ScanProfile quantum = quantum_airy_profile(a, config.optical, radii);
  const ScanProfile numeric =
      degenerate_profile(config.mask, config.source, config.optical, radii, config.quad, config.sample_budget);

  csv << "position_m,classical,quantum_analytic,quantum_numeric\n";
  double sq = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    csv << format_double(radii[i]) << ',' << format_double(classical.values()[i]) << ','
        << format_double(quantum.values()[i]) << ',' << format_double(numeric.values()[i]) << '\n';
    const double d = numeric.values()[i] - quantum.values()[i];
    sq += d * d;
  }

  CompareSummary s;
  const double threshold = config.compare.zero_threshold;
  s.classical = measure_pattern(classical, threshold);
  s.quantum_analytic = measure_pattern(quantum, threshold);
  s.quantum_numeric = measure_pattern(numeric, threshold);
  s.ratio_analytic = resolution_ratio(s.classical, s.quantum_analytic);
  s.ratio_numeric = resolution_ratio(s.classical, s.quantum_numeric);
  s.rms_deviation = std::sqrt(sq / static_cast<double>(radii.size()));
  s.rms_tolerance = config.compare.rms_tolerance;
  s.passed = s.rms_deviation <= s.rms_tolerance;
  return s;
}

void write_compare_summary(std::ostream& out, const CompareSummary& s) {
  out << "classical_first_zero_m = " << format_double(s.classical.first_zero_radius) << '\n'
      << "quantum_analytic_first_zero_m = " << format_double(s.quantum_analytic.first_zero_radius) << '\n'
      << "quantum_numeric_first_zero_m = " << format_double(s.quantum_numeric.first_zero_radius) << '\n'
      << "classical_fwhm_m = " << format_double(s.classical.fwhm) << '\n'
      << "quantum_analytic_fwhm_m = " << format_double(s.quantum_analytic.fwhm) << '\n'
      << "quantum_numeric_fwhm_m = " << format_double(s.quantum_numeric.fwhm) << '\n'
      << "resolution_ratio = " << format_double(s.ratio_analytic) << '\n'
      << "resolution_ratio_numeric = " << format_double(s.ratio_numeric) << '\n'
      << "rms_numeric_vs_analytic = " << format_double(s.rms_deviation) << '\n'
      << "rms_tolerance = " << format_double(s.rms_tolerance) << '\n'
      << "status = " << (s.passed ? "ok" : "FAILED") << '\n';
}

std::vector<CountRecord> run_scan(const RunConfig& config, std::ostream& csv) {
  if (!config.detector) throw ConfigError("detector", "scan needs a detector section");
  const double a = require_aperture_radius(config);
  const auto positions = scan_radii(config);
  auto records = simulate_scan(positions, *config.detector, airy_profile_fn(config.pattern, a, config.optical),
                               config.background);
  write_scan_csv(csv, records);
  return records;
}

void write_scan_csv(std::ostream& out, const std::vector<CountRecord>& records) {
  out << "position_m,counts,expected,accidental\n";
  for (const auto& r : records)
    out << format_double(r.position) << ',' << detail::format_uint(r.coincidences) << ','
        << format_double(r.expected) << ',' << format_double(r.accidental_estimate) << '\n';
}

std::vector<CountRecord> read_scan_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("scan CSV is empty");
  const auto header = split_csv(line);
  auto column = [&](const std::string& name) -> std::ptrdiff_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<std::ptrdiff_t>(i);
    return -1;
  };
  const auto pos_col = column("position_m");
  const auto count_col = column("counts");
  const auto expected_col = column("expected");
  const auto acc_col = column("accidental");
  if (pos_col < 0 || count_col < 0) throw IoError("scan CSV needs position_m and counts columns");

  std::vector<CountRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) throw IoError("scan CSV line " + std::to_string(lineno) + ": wrong field count");
    CountRecord r;
    r.position = parse_double(fields[pos_col], lineno);
    const double counts = parse_double(fields[count_col], lineno);
    if (!(counts >= 0.0) || std::floor(counts) != counts)
      throw IoError("scan CSV line " + std::to_string(lineno) + ": counts must be a non-negative integer");
    r.coincidences = static_cast<std::uint64_t>(counts);
    if (expected_col >= 0) r.expected = parse_double(fields[expected_col], lineno);
    if (acc_col >= 0) r.accidental_estimate = parse_double(fields[acc_col], lineno);
    records.push_back(r);
  }
  return records;
}

FitResult run_fit(const RunConfig& config, std::ostream& csv) {
  if (config.fit_input.empty()) throw ConfigError("fit.input", "missing required key for the fit workflow");
  std::ifstream in(config.fit_input);
  if (!in) throw IoError("cannot open scan CSV '" + config.fit_input + "'");
  return run_fit(config, read_scan_csv(in), csv);
}

FitResult run_fit(const RunConfig& config, const std::vector<CountRecord>& records, std::ostream& csv) {
  const double a = require_aperture_radius(config);
  FitOptions options;
  if (config.detector) options.pinhole_radius = config.detector->pinhole_radius;
  const FitResult fit = fit_profile(records, a, config.optical, config.pattern, options);
  write_fit_csv(csv, fit);
  return fit;
}

void write_fit_csv(std::ostream& out, const FitResult& f) {
  out << "amplitude,amplitude_err,center_offset_m,center_offset_err_m,background,background_err,"
         "first_zero_m,first_zero_err_m,chi_square,reduced_chi_square,iterations";
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out << ",cov_" << r << c;
  out << '\n';
  auto err = [&](int i) { return std::sqrt(std::max(f.covariance[i][i], 0.0)); };
  out << format_double(f.amplitude) << ',' << format_double(err(0)) << ',' << format_double(f.center_offset) << ','
      << format_double(err(1)) << ',' << format_double(f.background) << ',' << format_double(err(2)) << ','
      << format_double(f.first_zero_estimate) << ',' << format_double(f.first_zero_uncertainty) << ','
      << format_double(f.chi_square) << ',' << format_double(f.reduced_chi_square) << ',' << f.iterations;
  for (const auto& row : f.covariance)
    for (double v : row) out << ',' << format_double(v);
  out << '\n';
}

}  // namespace twophoton
