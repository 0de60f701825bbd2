// Command-line front end: pattern, scan, fit and compare workflows driven by
// a `section.key = value` config file. Talks to the library through its C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "twophoton/twophoton.h"

namespace {

struct ConfigDeleter {
  void operator()(tp_config* c) const { tp_config_free(c); }
};
using ConfigPtr = std::unique_ptr<tp_config, ConfigDeleter>;

int report(tp_status status, const char* what) {
  if (status == TP_OK) return EXIT_SUCCESS;
  std::fprintf(stderr, "%s: %s: %s\n", what, tp_status_name(status), tp_last_error());
  return EXIT_FAILURE;
}

void print_fit(const tp_fit_summary& f, FILE* out) {
  std::fprintf(out,
               "amplitude = %.10g\ncenter_offset_m = %.10g\nbackground = %.10g\n"
               "first_zero_m = %.10g\nfirst_zero_err_m = %.10g\nreduced_chi_square = %.6g\niterations = %d\n",
               f.amplitude, f.center_offset, f.background, f.first_zero, f.first_zero_err, f.reduced_chi_square,
               f.iterations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-photon Fraunhofer diffraction: Airy disk patterns, coincidence scans and fits"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output CSV path ('-' for stdout); overrides output.path");
    sub->add_option("--seed", seed, "detector RNG seed; overrides detector.seed");
  };
  auto* pattern = app.add_subcommand("pattern", "numeric coincidence profile of the configured mask and source");
  auto* scan = app.add_subcommand("scan", "Monte Carlo coincidence scan");
  auto* fit = app.add_subcommand("fit", "fit the Airy model to the scan CSV named by fit.input");
  auto* compare = app.add_subcommand("compare", "classical vs two-photon Airy disk, analytic and numeric");
  for (auto* sub : {pattern, scan, fit, compare}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  tp_config* raw = nullptr;
  if (const tp_status s = tp_config_parse_file(config_path.c_str(), &raw); s != TP_OK) return report(s, "config");
  ConfigPtr config(raw);

  if (!app.get_subcommands().front()->get_option("--seed")->empty()) tp_config_set_seed(config.get(), seed);
  const char* out = out_path.empty() ? nullptr : out_path.c_str();
  // Summaries go to stderr whenever the CSV itself is written to stdout.
  const std::string destination = out ? out_path : tp_config_output_path(config.get());
  FILE* summary_stream = (destination.empty() || destination == "-") ? stderr : stdout;

  if (pattern->parsed()) return report(tp_run_pattern(config.get(), out), "pattern");
  if (scan->parsed()) return report(tp_run_scan(config.get(), out), "scan");

  if (fit->parsed()) {
    tp_fit_summary summary{};
    const tp_status s = tp_run_fit(config.get(), out, &summary);
    if (s == TP_ERR_FIT_FAILED) {
      std::fprintf(stderr, "last iterate:\n");
      print_fit(summary, stderr);
    } else if (s == TP_OK) {
      print_fit(summary, summary_stream);
    }
    return report(s, "fit");
  }

  tp_compare_summary summary{};
  const tp_status s = tp_run_compare(config.get(), out, &summary);
  if (s == TP_OK || s == TP_ERR_TOLERANCE) {
    size_t needed = 0;
    tp_format_compare_summary(&summary, nullptr, 0, &needed);
    std::vector<char> text(needed);
    tp_format_compare_summary(&summary, text.data(), text.size(), &needed);
    std::fputs(text.data(), summary_stream);
  }
  return report(s, "compare");
}
