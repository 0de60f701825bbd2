/*
 * C interface to the two-photon Fraunhofer diffraction library.
 *
 * Every function returns a tp_status; on failure a description is available
 * from tp_last_error() on the calling thread until the next failing call.
 * Output paths: NULL falls back to the config's output.path; "-" or an
 * empty path writes to stdout.
 */
#ifndef TWOPHOTON_H
#define TWOPHOTON_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define TP_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define TP_API __attribute__((visibility("default")))
#else
#  define TP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tp_status {
  TP_OK = 0,
  TP_ERR_DOMAIN = 1,
  TP_ERR_INVALID_ARGUMENT = 2,
  TP_ERR_CONFIG = 3,
  TP_ERR_IO = 4,
  TP_ERR_RESOLUTION = 5,
  TP_ERR_BUDGET = 6,
  TP_ERR_UNSUPPORTED_SHAPE = 7,
  TP_ERR_NOT_FOUND = 8,
  TP_ERR_INVALID_METRICS = 9,
  TP_ERR_FIT_FAILED = 10,
  TP_ERR_TOLERANCE = 11,
  TP_ERR_INTERNAL = 99
} tp_status;

typedef enum tp_pattern { TP_PATTERN_CLASSICAL = 1, TP_PATTERN_QUANTUM = 2 } tp_pattern;

typedef struct tp_config tp_config;

typedef struct tp_compare_summary {
  double classical_first_zero;
  double quantum_first_zero;
  double numeric_first_zero;
  double classical_fwhm;
  double quantum_fwhm;
  double numeric_fwhm;
  double ratio;          /* classical / quantum analytic first zero */
  double ratio_numeric;  /* classical / quantum numeric first zero */
  double rms_deviation;
  double rms_tolerance;
  int passed;
} tp_compare_summary;

typedef struct tp_fit_summary {
  double amplitude;
  double center_offset;
  double background;
  double first_zero;
  double first_zero_err;
  double chi_square;
  double reduced_chi_square;
  double covariance[9]; /* row-major over (amplitude, center_offset, background) */
  int iterations;
} tp_fit_summary;

TP_API const char* tp_version(void);
TP_API const char* tp_last_error(void);
TP_API const char* tp_status_name(tp_status status);

/* Special functions and kernels. */
TP_API tp_status tp_bessel_j1(double x, double* out);
TP_API tp_status tp_airy_kernel(double x, double* out);
TP_API tp_status tp_lens_kernel(double wavelength, double focal_length, double rx, double ry, double r0x, double r0y,
                                double* re, double* im);

/* Analytic Airy profiles for a circular aperture of radius a. */
TP_API tp_status tp_airy_profile(tp_pattern pattern, double a, double wavelength, double focal_length,
                                 const double* radii, size_t n, double* values);
TP_API tp_status tp_airy_first_zero(tp_pattern pattern, double a, double wavelength, double focal_length, double* out);

/* Run configuration. */
TP_API tp_status tp_config_parse_file(const char* path, tp_config** out);
TP_API tp_status tp_config_parse_string(const char* text, tp_config** out);
TP_API void tp_config_free(tp_config* config);
/* Writes at most cap bytes including the terminator; *needed receives the
 * full size including the terminator. Returns TP_ERR_INVALID_ARGUMENT when
 * the buffer is too small. */
TP_API tp_status tp_config_render(const tp_config* config, char* buf, size_t cap, size_t* needed);
/* Overrides the detector seed; no effect when the config has no detector. */
TP_API tp_status tp_config_set_seed(tp_config* config, uint64_t seed);
TP_API tp_status tp_config_has_detector(const tp_config* config, int* out);
/* The config's output.path, or "" when unset. */
TP_API const char* tp_config_output_path(const tp_config* config);

/* Workflows. */
TP_API tp_status tp_run_pattern(const tp_config* config, const char* out_path);
/* Returns TP_ERR_TOLERANCE, with the summary filled in, when the numeric
 * profile deviates from the analytic one beyond the configured RMS. */
TP_API tp_status tp_run_compare(const tp_config* config, const char* out_path, tp_compare_summary* summary);
TP_API tp_status tp_format_compare_summary(const tp_compare_summary* summary, char* buf, size_t cap, size_t* needed);
TP_API tp_status tp_run_scan(const tp_config* config, const char* out_path);
/* On TP_ERR_FIT_FAILED the summary holds the last iterate. */
TP_API tp_status tp_run_fit(const tp_config* config, const char* out_path, tp_fit_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* TWOPHOTON_H */
