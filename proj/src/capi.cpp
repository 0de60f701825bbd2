#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "twophoton/bessel.hpp"
#include "twophoton/config.hpp"
#include "twophoton/errors.hpp"
#include "twophoton/twophoton.h"
#include "twophoton/workflows.hpp"

struct tp_config {
  twophoton::RunConfig config;
};

namespace {

thread_local std::string last_error;

tp_status fail(tp_status status, const std::string& message) {
  last_error = message;
  return status;
}

tp_status map_code(twophoton::ErrorCode code) {
  using twophoton::ErrorCode;
  switch (code) {
    case ErrorCode::Domain: return TP_ERR_DOMAIN;
    case ErrorCode::InvalidArgument: return TP_ERR_INVALID_ARGUMENT;
    case ErrorCode::Config: return TP_ERR_CONFIG;
    case ErrorCode::Io: return TP_ERR_IO;
    case ErrorCode::Resolution: return TP_ERR_RESOLUTION;
    case ErrorCode::Budget: return TP_ERR_BUDGET;
    case ErrorCode::UnsupportedShape: return TP_ERR_UNSUPPORTED_SHAPE;
    case ErrorCode::NotFound: return TP_ERR_NOT_FOUND;
    case ErrorCode::InvalidMetrics: return TP_ERR_INVALID_METRICS;
    case ErrorCode::FitFailure: return TP_ERR_FIT_FAILED;
    case ErrorCode::Tolerance: return TP_ERR_TOLERANCE;
  }
  return TP_ERR_INTERNAL;
}

template <class Fn>
tp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const twophoton::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(TP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TP_ERR_INTERNAL, "unknown error");
  }
}

tp_status copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (buf == nullptr || cap < text.size() + 1) return fail(TP_ERR_INVALID_ARGUMENT, "output buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return TP_OK;
}

// Runs `write` against the destination selected by out_path / config.
template <class Write>
void with_output(const twophoton::RunConfig& cfg, const char* out_path, Write&& write) {
  std::string path = out_path ? out_path : cfg.output_path;
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw twophoton::IoError("cannot open output file '" + path + "'");
  write(out);
  if (!out) throw twophoton::IoError("failed writing '" + path + "'");
}

void fill(tp_fit_summary* s, const twophoton::FitResult& f) {
  if (s == nullptr) return;
  s->amplitude = f.amplitude;
  s->center_offset = f.center_offset;
  s->background = f.background;
  s->first_zero = f.first_zero_estimate;
  s->first_zero_err = f.first_zero_uncertainty;
  s->chi_square = f.chi_square;
  s->reduced_chi_square = f.reduced_chi_square;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s->covariance[r * 3 + c] = f.covariance[r][c];
  s->iterations = f.iterations;
}

twophoton::CompareSummary to_cpp(const tp_compare_summary& s) {
  twophoton::CompareSummary c;
  c.classical.first_zero_radius = s.classical_first_zero;
  c.quantum_analytic.first_zero_radius = s.quantum_first_zero;
  c.quantum_numeric.first_zero_radius = s.numeric_first_zero;
  c.classical.fwhm = s.classical_fwhm;
  c.quantum_analytic.fwhm = s.quantum_fwhm;
  c.quantum_numeric.fwhm = s.numeric_fwhm;
  c.ratio_analytic = s.ratio;
  c.ratio_numeric = s.ratio_numeric;
  c.rms_deviation = s.rms_deviation;
  c.rms_tolerance = s.rms_tolerance;
  c.passed = s.passed != 0;
  return c;
}

twophoton::AiryPattern to_pattern(tp_pattern p) {
  if (p == TP_PATTERN_CLASSICAL) return twophoton::AiryPattern::Classical;
  if (p == TP_PATTERN_QUANTUM) return twophoton::AiryPattern::Quantum;
  throw twophoton::InvalidArgument("unknown pattern");
}

}  // namespace

extern "C" {

const char* tp_version(void) { return "1.0.0"; }

const char* tp_last_error(void) { return last_error.c_str(); }

const char* tp_status_name(tp_status status) {
  switch (status) {
    case TP_OK: return "ok";
    case TP_ERR_DOMAIN: return "domain error";
    case TP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TP_ERR_CONFIG: return "config error";
    case TP_ERR_IO: return "i/o error";
    case TP_ERR_RESOLUTION: return "resolution error";
    case TP_ERR_BUDGET: return "budget exceeded";
    case TP_ERR_UNSUPPORTED_SHAPE: return "unsupported shape";
    case TP_ERR_NOT_FOUND: return "not found";
    case TP_ERR_INVALID_METRICS: return "invalid metrics";
    case TP_ERR_FIT_FAILED: return "fit failed";
    case TP_ERR_TOLERANCE: return "tolerance exceeded";
    case TP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tp_status tp_bessel_j1(double x, double* out) {
  if (out == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = twophoton::bessel_j1(x);
    return TP_OK;
  });
}

tp_status tp_airy_kernel(double x, double* out) {
  if (out == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = twophoton::airy_kernel(x);
    return TP_OK;
  });
}

tp_status tp_lens_kernel(double wavelength, double focal_length, double rx, double ry, double r0x, double r0y,
                         double* re, double* im) {
  if (re == nullptr || im == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "output pointer is null");
  return guarded([&] {
    const twophoton::OpticalConfig cfg(wavelength, focal_length);
    const auto h = twophoton::lens_kernel({rx, ry}, {r0x, r0y}, cfg);
    *re = h.real();
    *im = h.imag();
    return TP_OK;
  });
}

tp_status tp_airy_profile(tp_pattern pattern, double a, double wavelength, double focal_length, const double* radii,
                          size_t n, double* values) {
  if (n > 0 && (radii == nullptr || values == nullptr)) return fail(TP_ERR_INVALID_ARGUMENT, "null array");
  return guarded([&] {
    const twophoton::OpticalConfig cfg(wavelength, focal_length);
    const auto p = to_pattern(pattern);
    if (!(a > 0.0)) throw twophoton::InvalidArgument("aperture radius must be positive");
    for (size_t i = 0; i < n; ++i)
      values[i] = twophoton::airy_kernel(twophoton::airy_argument(p, a, cfg, radii[i]));
    return TP_OK;
  });
}

tp_status tp_airy_first_zero(tp_pattern pattern, double a, double wavelength, double focal_length, double* out) {
  if (out == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] {
    *out = twophoton::airy_first_zero_radius(to_pattern(pattern), a, twophoton::OpticalConfig(wavelength, focal_length));
    return TP_OK;
  });
}

tp_status tp_config_parse_file(const char* path, tp_config** out) {
  if (path == nullptr || out == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new tp_config{twophoton::parse_config_file(path)};
    return TP_OK;
  });
}

tp_status tp_config_parse_string(const char* text, tp_config** out) {
  if (text == nullptr || out == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new tp_config{twophoton::parse_config(text)};
    return TP_OK;
  });
}

void tp_config_free(tp_config* config) { delete config; }

tp_status tp_config_render(const tp_config* config, char* buf, size_t cap, size_t* needed) {
  if (config == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "config is null");
  return guarded([&] { return copy_out(twophoton::render_config(config->config), buf, cap, needed); });
}

tp_status tp_config_set_seed(tp_config* config, uint64_t seed) {
  if (config == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "config is null");
  if (config->config.detector) config->config.detector->rng_seed = seed;
  return TP_OK;
}

tp_status tp_config_has_detector(const tp_config* config, int* out) {
  if (config == nullptr || out == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "null argument");
  *out = config->config.detector.has_value() ? 1 : 0;
  return TP_OK;
}

const char* tp_config_output_path(const tp_config* config) {
  return config == nullptr ? "" : config->config.output_path.c_str();
}

tp_status tp_run_pattern(const tp_config* config, const char* out_path) {
  if (config == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "config is null");
  return guarded([&] {
    // Compute before opening the destination so failures leave no partial file.
    std::ostringstream csv;
    twophoton::run_pattern(config->config, csv);
    with_output(config->config, out_path, [&](std::ostream& out) { out << csv.str(); });
    return TP_OK;
  });
}

tp_status tp_run_compare(const tp_config* config, const char* out_path, tp_compare_summary* summary) {
  if (config == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "config is null");
  return guarded([&] {
    std::ostringstream csv;
    const auto s = twophoton::run_compare(config->config, csv);
    with_output(config->config, out_path, [&](std::ostream& out) { out << csv.str(); });
    if (summary) {
      summary->classical_first_zero = s.classical.first_zero_radius;
      summary->quantum_first_zero = s.quantum_analytic.first_zero_radius;
      summary->numeric_first_zero = s.quantum_numeric.first_zero_radius;
      summary->classical_fwhm = s.classical.fwhm;
      summary->quantum_fwhm = s.quantum_analytic.fwhm;
      summary->numeric_fwhm = s.quantum_numeric.fwhm;
      summary->ratio = s.ratio_analytic;
      summary->ratio_numeric = s.ratio_numeric;
      summary->rms_deviation = s.rms_deviation;
      summary->rms_tolerance = s.rms_tolerance;
      summary->passed = s.passed ? 1 : 0;
    }
    if (!s.passed)
      return fail(TP_ERR_TOLERANCE, "numeric profile deviates from the analytic Airy disk: RMS " +
                                        std::to_string(s.rms_deviation) + " > " + std::to_string(s.rms_tolerance));
    return TP_OK;
  });
}

tp_status tp_format_compare_summary(const tp_compare_summary* summary, char* buf, size_t cap, size_t* needed) {
  if (summary == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "summary is null");
  return guarded([&] {
    std::ostringstream out;
    twophoton::write_compare_summary(out, to_cpp(*summary));
    return copy_out(out.str(), buf, cap, needed);
  });
}

tp_status tp_run_scan(const tp_config* config, const char* out_path) {
  if (config == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "config is null");
  return guarded([&] {
    std::ostringstream csv;
    twophoton::run_scan(config->config, csv);
    with_output(config->config, out_path, [&](std::ostream& out) { out << csv.str(); });
    return TP_OK;
  });
}

tp_status tp_run_fit(const tp_config* config, const char* out_path, tp_fit_summary* summary) {
  if (config == nullptr) return fail(TP_ERR_INVALID_ARGUMENT, "config is null");
  return guarded([&] {
    std::ostringstream csv;
    try {
      const auto fit = twophoton::run_fit(config->config, csv);
      fill(summary, fit);
    } catch (const twophoton::FitFailure& e) {
      fill(summary, e.last_iterate());
      throw;
    }
    with_output(config->config, out_path, [&](std::ostream& out) { out << csv.str(); });
    return TP_OK;
  });
}

}  // extern "C"
