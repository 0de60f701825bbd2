#include "twophoton/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "format.hpp"
#include "twophoton/errors.hpp"

namespace twophoton {

namespace {

enum class Kind { Length, Time, Rate, Number, Integer, Word };

const std::map<std::string, Kind>& known_keys() {
  static const std::map<std::string, Kind> keys = {
      {"optical.wavelength", Kind::Length},
      {"optical.focal_length", Kind::Length},
      {"mask.type", Kind::Word},
      {"mask.circle.radius", Kind::Length},
      {"mask.circle.diameter", Kind::Length},
      {"mask.double_slit.width", Kind::Length},
      {"mask.double_slit.separation", Kind::Length},
      {"mask.double_slit.height", Kind::Length},
      {"mask.rectangle.half_width_x", Kind::Length},
      {"mask.rectangle.half_width_y", Kind::Length},
      {"mask.pixel_grid.file", Kind::Word},
      {"mask.pixel_grid.reference_radius", Kind::Length},
      {"source.model", Kind::Word},
      {"source.correlation_width", Kind::Length},
      {"source.beam_width", Kind::Length},
      {"quad.half_extent", Kind::Length},
      {"quad.samples", Kind::Integer},
      {"quad.budget", Kind::Integer},
      {"scan.r_min", Kind::Length},
      {"scan.r_max", Kind::Length},
      {"scan.step", Kind::Length},
      {"detector.pinhole_radius", Kind::Length},
      {"detector.pair_flux", Kind::Rate},
      {"detector.dwell_time", Kind::Time},
      {"detector.coincidence_window", Kind::Time},
      {"detector.singles_rate", Kind::Rate},
      {"detector.seed", Kind::Integer},
      {"detector.background", Kind::Number},
      {"experiment.pattern", Kind::Word},
      {"fit.input", Kind::Word},
      {"compare.rms_tolerance", Kind::Number},
      {"compare.zero_threshold", Kind::Number},
      {"output.path", Kind::Word},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Values are divided by the returned power of ten: 7.5 / 1e6 rounds to the
// double nearest 7.5e-6, while 7.5 * 1e-6 does not.
double unit_divisor(const std::string& key, Kind kind, const std::string& unit) {
  static const std::map<std::string, double> lengths = {
      {"nm", 1e9}, {"um", 1e6}, {"mm", 1e3}, {"cm", 1e2}, {"m", 1.0}};
  static const std::map<std::string, double> times = {{"ns", 1e9}, {"us", 1e6}, {"ms", 1e3}, {"s", 1.0}};
  switch (kind) {
    case Kind::Length:
      if (auto it = lengths.find(unit); it != lengths.end()) return it->second;
      throw ConfigError(key, unit.empty() ? "missing length unit (nm, um, mm, cm, m)"
                                          : "unit '" + unit + "' is not a length unit (nm, um, mm, cm, m)");
    case Kind::Time:
      if (auto it = times.find(unit); it != times.end()) return it->second;
      throw ConfigError(key, unit.empty() ? "missing time unit (ns, us, ms, s)"
                                          : "unit '" + unit + "' is not a time unit (ns, us, ms, s)");
    case Kind::Rate:
      if (unit.empty() || unit == "/s" || unit == "Hz") return 1.0;
      throw ConfigError(key, "unit '" + unit + "' is not a rate unit (/s, Hz)");
    default:
      if (unit.empty()) return 1.0;
      throw ConfigError(key, "unexpected unit '" + unit + "' on a dimensionless value");
  }
}

class Document {
 public:
  Document(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      const auto eq = stripped.find('=');
      if (eq == std::string::npos)
        throw ConfigError("", "line " + std::to_string(lineno) + ": expected 'section.key = value'");
      const std::string key = trim(std::string_view(stripped).substr(0, eq));
      const std::string value = trim(std::string_view(stripped).substr(eq + 1));
      if (key.empty()) throw ConfigError("", "line " + std::to_string(lineno) + ": empty key");
      if (!known_keys().contains(key)) throw ConfigError(key, "unknown key");
      if (value.empty()) throw ConfigError(key, "empty value");
      if (!values_.emplace(key, value).second) throw ConfigError(key, "duplicate key");
    }
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  bool has_section(const std::string& prefix) const {
    return std::any_of(values_.begin(), values_.end(),
                       [&](const auto& kv) { return kv.first.starts_with(prefix); });
  }

  const std::string& word(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "missing required key");
    used_.insert(key);
    return it->second;
  }

  double number(const std::string& key) const {
    const std::string& text = word(key);
    const Kind kind = known_keys().at(key);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr == text.data()) throw ConfigError(key, "'" + text + "' is not a number");
    const std::string unit = trim(std::string_view(res.ptr, text.data() + text.size() - res.ptr));
    v /= unit_divisor(key, kind, unit);
    if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
    return v;
  }

  double positive(const std::string& key) const {
    const double v = number(key);
    if (!(v > 0.0)) throw ConfigError(key, "must be positive");
    return v;
  }

  double number_or(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::uint64_t integer(const std::string& key) const {
    const std::string& text = word(key);
    std::uint64_t v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec == std::errc{} && res.ptr == text.data() + text.size()) return v;
    // Accept integral values written in floating notation, e.g. 1e9.
    double d = 0.0;
    const auto dres = std::from_chars(text.data(), text.data() + text.size(), d);
    if (dres.ec == std::errc{} && dres.ptr == text.data() + text.size() && d >= 0.0 && d < 1.8e19 &&
        std::floor(d) == d)
      return static_cast<std::uint64_t>(d);
    throw ConfigError(key, "'" + text + "' is not a non-negative integer");
  }

  // Keys present for a shape or model that was not selected.
  void reject_unused(const std::string& prefix, const std::string& why) const {
    for (const auto& [key, value] : values_)
      if (key.starts_with(prefix) && !used_.contains(key)) throw ConfigError(key, why);
  }

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

ApertureMask parse_mask(const Document& doc, const std::string& base_dir, std::string& mask_file,
                        std::optional<double>& reference_radius) {
  const std::string& type = doc.word("mask.type");
  const auto wrap = [](const std::string& key, auto shape) {
    try {
      return ApertureMask(shape);
    } catch (const InvalidArgument& e) {
      throw ConfigError(key, e.what());
    }
  };
  if (type == "circle") {
    const bool r = doc.has("mask.circle.radius");
    const bool d = doc.has("mask.circle.diameter");
    if (r == d) throw ConfigError("mask.circle", "give exactly one of radius or diameter");
    const double radius = r ? doc.positive("mask.circle.radius") : 0.5 * doc.positive("mask.circle.diameter");
    doc.reject_unused("mask.", "does not apply to mask.type = circle");
    return wrap("mask.circle", Circle{radius});
  }
  if (type == "double_slit") {
    DoubleSlit s{doc.positive("mask.double_slit.width"), doc.positive("mask.double_slit.separation"),
                 doc.positive("mask.double_slit.height")};
    doc.reject_unused("mask.", "does not apply to mask.type = double_slit");
    return wrap("mask.double_slit", s);
  }
  if (type == "rectangle") {
    Rectangle rect{doc.positive("mask.rectangle.half_width_x"), doc.positive("mask.rectangle.half_width_y")};
    doc.reject_unused("mask.", "does not apply to mask.type = rectangle");
    return wrap("mask.rectangle", rect);
  }
  if (type == "pixel_grid") {
    std::filesystem::path path = doc.word("mask.pixel_grid.file");
    if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
    mask_file = path.string();
    if (doc.has("mask.pixel_grid.reference_radius"))
      reference_radius = doc.positive("mask.pixel_grid.reference_radius");
    doc.reject_unused("mask.", "does not apply to mask.type = pixel_grid");
    try {
      return ApertureMask(read_pixel_grid_file(mask_file));
    } catch (const Error& e) {
      throw ConfigError("mask.pixel_grid.file", e.what());
    }
  }
  throw ConfigError("mask.type", "expected circle, double_slit, rectangle or pixel_grid, got '" + type + "'");
}

BiphotonSource parse_source(const Document& doc) {
  const std::string model = doc.has("source.model") ? doc.word("source.model") : "ideal";
  if (model == "ideal") {
    doc.reject_unused("source.", "does not apply to source.model = ideal");
    return BiphotonSource(IdealDelta{});
  }
  if (model == "gaussian") {
    GaussianCorrelated g{doc.positive("source.correlation_width"), doc.positive("source.beam_width")};
    try {
      return BiphotonSource(g);
    } catch (const InvalidArgument& e) {
      throw ConfigError("source.correlation_width", e.what());
    }
  }
  throw ConfigError("source.model", "expected ideal or gaussian, got '" + model + "'");
}

std::optional<DetectorModel> parse_detector(const Document& doc, double& background) {
  if (!doc.has_section("detector.")) return std::nullopt;
  DetectorModel d;
  d.pinhole_radius = doc.number_or("detector.pinhole_radius", d.pinhole_radius);
  d.pair_flux = doc.number_or("detector.pair_flux", d.pair_flux);
  d.dwell_time = doc.number_or("detector.dwell_time", d.dwell_time);
  d.coincidence_window = doc.number_or("detector.coincidence_window", d.coincidence_window);
  d.singles_rate = doc.number_or("detector.singles_rate", d.singles_rate);
  if (doc.has("detector.seed")) d.rng_seed = doc.integer("detector.seed");
  background = doc.number_or("detector.background", 0.0);
  if (background < 0.0) throw ConfigError("detector.background", "must be non-negative");
  try {
    d.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("detector", e.what());
  }
  return d;
}

}  // namespace

std::optional<double> RunConfig::aperture_radius() const {
  if (const auto* c = std::get_if<Circle>(&mask.shape())) return c->radius;
  return reference_radius;
}

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  const Document doc(text);

  std::optional<OpticalConfig> optical;
  try {
    const double wavelength = doc.positive("optical.wavelength");
    optical.emplace(wavelength, doc.positive("optical.focal_length"));
  } catch (const InvalidArgument& e) {
    throw ConfigError("optical", e.what());
  }

  std::string mask_file;
  std::optional<double> reference_radius;
  ApertureMask mask = parse_mask(doc, base_dir, mask_file, reference_radius);

  RunConfig cfg(*optical, std::move(mask));
  cfg.mask_file = std::move(mask_file);
  cfg.reference_radius = reference_radius;
  cfg.source = parse_source(doc);

  cfg.quad.half_extent = doc.positive("quad.half_extent");
  cfg.quad.samples_per_axis = static_cast<std::size_t>(doc.integer("quad.samples"));
  if (cfg.quad.samples_per_axis == 0) throw ConfigError("quad.samples", "must be positive");
  if (cfg.quad.half_extent < cfg.mask.bounding_half_extent())
    throw ConfigError("quad.half_extent", "window does not cover the mask");
  if (doc.has("quad.budget")) cfg.sample_budget = doc.integer("quad.budget");

  cfg.scan.r_min = doc.number("scan.r_min");
  cfg.scan.r_max = doc.number("scan.r_max");
  cfg.scan.step = doc.positive("scan.step");
  if (!(cfg.scan.r_min < cfg.scan.r_max)) throw ConfigError("scan.r_max", "must be greater than scan.r_min");
  const double reach = std::max(std::abs(cfg.scan.r_min), std::abs(cfg.scan.r_max));
  const std::size_t needed = min_samples_per_axis(cfg.quad.half_extent, reach, cfg.optical);
  if (cfg.quad.samples_per_axis < needed)
    throw ConfigError("quad.samples", "phase-sampling bound needs at least " + detail::format_uint(needed) +
                                          " samples for the scan range");

  cfg.detector = parse_detector(doc, cfg.background);

  if (doc.has("experiment.pattern")) {
    const std::string& p = doc.word("experiment.pattern");
    if (p == "quantum")
      cfg.pattern = AiryPattern::Quantum;
    else if (p == "classical")
      cfg.pattern = AiryPattern::Classical;
    else
      throw ConfigError("experiment.pattern", "expected quantum or classical, got '" + p + "'");
  }
  if (doc.has("fit.input")) cfg.fit_input = doc.word("fit.input");
  cfg.compare.rms_tolerance = doc.number_or("compare.rms_tolerance", cfg.compare.rms_tolerance);
  if (!(cfg.compare.rms_tolerance > 0.0)) throw ConfigError("compare.rms_tolerance", "must be positive");
  cfg.compare.zero_threshold = doc.number_or("compare.zero_threshold", cfg.compare.zero_threshold);
  if (!(cfg.compare.zero_threshold > 0.0 && cfg.compare.zero_threshold < 0.5))
    throw ConfigError("compare.zero_threshold", "must lie in (0, 0.5)");
  if (doc.has("output.path")) cfg.output_path = doc.word("output.path");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

std::string render_config(const RunConfig& c) {
  using detail::format_double;
  using detail::format_uint;
  std::ostringstream out;
  auto line = [&](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
  auto length = [&](const char* key, double v) { line(key, format_double(v) + " m"); };
  auto time = [&](const char* key, double v) { line(key, format_double(v) + " s"); };

  length("optical.wavelength", c.optical.wavelength());
  length("optical.focal_length", c.optical.focal_length());

  const auto& shape = c.mask.shape();
  if (const auto* circle = std::get_if<Circle>(&shape)) {
    line("mask.type", "circle");
    length("mask.circle.radius", circle->radius);
  } else if (const auto* slit = std::get_if<DoubleSlit>(&shape)) {
    line("mask.type", "double_slit");
    length("mask.double_slit.width", slit->width);
    length("mask.double_slit.separation", slit->separation);
    length("mask.double_slit.height", slit->height);
  } else if (const auto* rect = std::get_if<Rectangle>(&shape)) {
    line("mask.type", "rectangle");
    length("mask.rectangle.half_width_x", rect->half_x);
    length("mask.rectangle.half_width_y", rect->half_y);
  } else {
    line("mask.type", "pixel_grid");
    line("mask.pixel_grid.file", c.mask_file);
    if (c.reference_radius) length("mask.pixel_grid.reference_radius", *c.reference_radius);
  }

  if (const auto* g = std::get_if<GaussianCorrelated>(&c.source.model())) {
    line("source.model", "gaussian");
    length("source.correlation_width", g->correlation_width);
    length("source.beam_width", g->beam_width);
  } else {
    line("source.model", "ideal");
  }

  length("quad.half_extent", c.quad.half_extent);
  line("quad.samples", format_uint(c.quad.samples_per_axis));
  line("quad.budget", format_uint(c.sample_budget));

  length("scan.r_min", c.scan.r_min);
  length("scan.r_max", c.scan.r_max);
  length("scan.step", c.scan.step);

  if (c.detector) {
    const auto& d = *c.detector;
    length("detector.pinhole_radius", d.pinhole_radius);
    line("detector.pair_flux", format_double(d.pair_flux) + " /s");
    time("detector.dwell_time", d.dwell_time);
    time("detector.coincidence_window", d.coincidence_window);
    line("detector.singles_rate", format_double(d.singles_rate) + " /s");
    line("detector.seed", format_uint(d.rng_seed));
    line("detector.background", format_double(c.background));
  }

  line("experiment.pattern", c.pattern == AiryPattern::Quantum ? "quantum" : "classical");
  if (!c.fit_input.empty()) line("fit.input", c.fit_input);
  line("compare.rms_tolerance", format_double(c.compare.rms_tolerance));
  line("compare.zero_threshold", format_double(c.compare.zero_threshold));
  if (!c.output_path.empty()) line("output.path", c.output_path);
  return out.str();
}

}  // namespace twophoton
