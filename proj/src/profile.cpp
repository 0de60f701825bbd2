#include "twophoton/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twophoton/errors.hpp"

namespace twophoton {

ScanProfile::ScanProfile(std::vector<double> positions, std::vector<double> values, Normalization normalization,
                         std::vector<double> uncertainties)
    : positions_(std::move(positions)),
      values_(std::move(values)),
      uncertainties_(std::move(uncertainties)),
      normalization_(normalization) {
  if (positions_.empty()) throw InvalidArgument("scan profile must not be empty");
  if (values_.size() != positions_.size()) throw InvalidArgument("scan profile: values/positions length mismatch");
  if (!uncertainties_.empty() && uncertainties_.size() != positions_.size())
    throw InvalidArgument("scan profile: uncertainties/positions length mismatch");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i])) throw InvalidArgument("scan profile: non-finite position");
    if (i > 0 && !(positions_[i] > positions_[i - 1]))
      throw InvalidArgument("scan profile: positions must be strictly increasing (index " + std::to_string(i) + ")");
    if (!std::isfinite(values_[i]) || values_[i] < 0.0)
      throw InvalidArgument("scan profile: values must be finite and non-negative");
  }
  for (double u : uncertainties_)
    if (!std::isfinite(u) || u < 0.0) throw InvalidArgument("scan profile: uncertainties must be non-negative");
  if (normalization_ == Normalization::PeakNormalized && peak_value() > 1.0 + 1e-12)
    throw InvalidArgument("scan profile: peak-normalized values exceed 1");
}

std::size_t ScanProfile::peak_index() const {
  return static_cast<std::size_t>(std::max_element(values_.begin(), values_.end()) - values_.begin());
}

std::vector<double> uniform_grid(double min, double max, double step) {
  if (!std::isfinite(min) || !std::isfinite(max) || !(step > 0.0) || !std::isfinite(step) || !(min < max))
    throw InvalidArgument("uniform_grid: need finite min < max and step > 0");
  const double span = (max - min) / step;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = min + step * static_cast<double>(i);
  return out;
}

std::vector<double> linspace(double min, double max, std::size_t n) {
  if (n < 2 || !(min < max)) throw InvalidArgument("linspace: need n >= 2 and min < max");
  std::vector<double> out(n);
  const double step = (max - min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = min + step * static_cast<double>(i);
  out.back() = max;
  return out;
}

}  // namespace twophoton
