#include "twophoton/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "parallel.hpp"
#include "twophoton/errors.hpp"

namespace twophoton {

namespace {

struct PhaseRow {
  std::vector<double> re;
  std::vector<double> im;
};

// exp(-i·k·x) over the grid coordinates.
PhaseRow phase_row(double k, std::span<const double> coords) {
  PhaseRow row{std::vector<double>(coords.size()), std::vector<double>(coords.size())};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const double phi = -k * coords[i];
    row.re[i] = std::cos(phi);
    row.im[i] = std::sin(phi);
  }
  return row;
}

// h_f(r, r0) = h_f(r, 0) · exp(-i q_scale r·r0), so the pair of kernels
// factors into this constant times plane-wave phases over the source grid.
Complex kernel_prefactor(const TransverseVector& r1, const TransverseVector& r2, const OpticalConfig& cfg) {
  const TransverseVector origin{};
  return lens_kernel(r1, origin, cfg) * lens_kernel(r2, origin, cfg);
}

double detector_radius(const TransverseVector& r1, const TransverseVector& r2) {
  return std::max(r1.norm(), r2.norm());
}

class IdealEvaluator {
 public:
  IdealEvaluator(const ApertureMask& mask, const OpticalConfig& cfg, const QuadratureSpec& quad)
      : cfg_(cfg), aperture_(mask, quad) {}

  Complex amplitude(const TransverseVector& r1, const TransverseVector& r2) const {
    const TransverseVector k = (r1 + r2) * cfg_.q_scale();
    const auto coords = aperture_.coordinates();
    const std::size_t n = aperture_.samples();
    const PhaseRow ex = phase_row(k.x, coords);
    const PhaseRow ey = phase_row(k.y, coords);
    const auto cells = aperture_.cells();
    double sum_re = 0.0;
    double sum_im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double* p = cells.data() + j * n;
      double row_re = 0.0;
      double row_im = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        row_re += p[i] * ex.re[i];
        row_im += p[i] * ex.im[i];
      }
      sum_re += row_re * ey.re[j] - row_im * ey.im[j];
      sum_im += row_re * ey.im[j] + row_im * ey.re[j];
    }
    const double cell = aperture_.step() * aperture_.step();
    return kernel_prefactor(r1, r2, cfg_) * Complex(sum_re, sum_im) * cell;
  }

 private:
  OpticalConfig cfg_;
  SampledAperture aperture_;
};

class GaussianEvaluator {
 public:
  GaussianEvaluator(const ApertureMask& mask, const GaussianCorrelated& model, const OpticalConfig& cfg,
                    const QuadratureSpec& quad)
      : cfg_(cfg), aperture_(mask, quad) {
    const std::size_t n = aperture_.samples();
    const auto x = aperture_.coordinates();
    const double inv_diff = 1.0 / (2.0 * model.correlation_width * model.correlation_width);
    const double inv_sum = 1.0 / (8.0 * model.beam_width * model.beam_width);
    // C separates into identical x and y factors on the shared grid.
    factor_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double d = x[i] - x[k];
        const double s = x[i] + x[k];
        factor_[i * n + k] = std::exp(-d * d * inv_diff - s * s * inv_sum);
      }
    }
    transposed_.resize(n * n);
    for (std::size_t row = 0; row < n; ++row)
      for (std::size_t col = 0; col < n; ++col) transposed_[col * n + row] = aperture_.open(col, row);
  }

  // Σ P(i,j)P(k,l) e1x[i] e1y[j] e2x[k] e2y[l] G[i,k] G[j,l], contracted
  // over i, then k, then (j, l): O(n³) instead of O(n⁴).
  Complex amplitude(const TransverseVector& r1, const TransverseVector& r2) const {
    const std::size_t n = aperture_.samples();
    const auto coords = aperture_.coordinates();
    const double q = cfg_.q_scale();
    const PhaseRow e1x = phase_row(q * r1.x, coords);
    const PhaseRow e1y = phase_row(q * r1.y, coords);
    const PhaseRow e2x = phase_row(q * r2.x, coords);
    const PhaseRow e2y = phase_row(q * r2.y, coords);

    // a[j][k] = Σ_i P(i,j) e1x[i] G[i][k]
    std::vector<double> a_re(n * n, 0.0), a_im(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      double* ar = a_re.data() + j * n;
      double* ai = a_im.data() + j * n;
      for (std::size_t i = 0; i < n; ++i) {
        if (aperture_.open(i, j) == 0.0) continue;
        const double wr = e1x.re[i];
        const double wi = e1x.im[i];
        const double* g = factor_.data() + i * n;
        for (std::size_t k = 0; k < n; ++k) {
          ar[k] += wr * g[k];
          ai[k] += wi * g[k];
        }
      }
    }

    // b[j][l] = Σ_k a[j][k] e2x[k] P(k,l)
    std::vector<double> b_re(n * n, 0.0), b_im(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double* ar = a_re.data() + j * n;
      const double* ai = a_im.data() + j * n;
      double* br = b_re.data() + j * n;
      double* bi = b_im.data() + j * n;
      for (std::size_t k = 0; k < n; ++k) {
        const double wr = ar[k] * e2x.re[k] - ai[k] * e2x.im[k];
        const double wi = ar[k] * e2x.im[k] + ai[k] * e2x.re[k];
        if (wr == 0.0 && wi == 0.0) continue;
        const double* p = transposed_.data() + k * n;
        for (std::size_t l = 0; l < n; ++l) {
          br[l] += wr * p[l];
          bi[l] += wi * p[l];
        }
      }
    }

    double sum_re = 0.0;
    double sum_im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double* br = b_re.data() + j * n;
      const double* bi = b_im.data() + j * n;
      const double* g = factor_.data() + j * n;
      double row_re = 0.0;
      double row_im = 0.0;
      for (std::size_t l = 0; l < n; ++l) {
        const double cr = br[l] * e2y.re[l] - bi[l] * e2y.im[l];
        const double ci = br[l] * e2y.im[l] + bi[l] * e2y.re[l];
        row_re += g[l] * cr;
        row_im += g[l] * ci;
      }
      sum_re += row_re * e1y.re[j] - row_im * e1y.im[j];
      sum_im += row_re * e1y.im[j] + row_im * e1y.re[j];
    }
    const double cell = aperture_.step() * aperture_.step();
    return kernel_prefactor(r1, r2, cfg_) * Complex(sum_re, sum_im) * (cell * cell);
  }

 private:
  OpticalConfig cfg_;
  SampledAperture aperture_;
  std::vector<double> factor_;
  std::vector<double> transposed_;
};

void check_budget(const QuadratureSpec& quad, std::uint64_t budget) {
  const double n = static_cast<double>(quad.samples_per_axis);
  const double total = n * n * n * n;
  if (total > static_cast<double>(budget))
    throw BudgetError("4D quadrature needs " + std::to_string(total) + " samples, budget is " +
                      std::to_string(budget));
}

const GaussianCorrelated& gaussian_model(const BiphotonSource& source) {
  const auto* g = std::get_if<GaussianCorrelated>(&source.model());
  if (g == nullptr)
    throw InvalidArgument("general biphoton amplitude needs a Gaussian-correlated source; use the ideal path");
  return *g;
}

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("profile radius must be finite");
    m = std::max(m, std::abs(v));
  }
  return m;
}

template <class Evaluator>
ScanProfile normalized_profile(const Evaluator& eval, std::span<const double> radii) {
  const TransverseVector origin{};
  const double reference = std::norm(eval.amplitude(origin, origin));
  if (!(reference > 0.0)) throw InvalidArgument("coincidence rate at the origin vanishes; mask has no open samples");
  std::vector<double> values(radii.size());
  detail::parallel_for(radii.size(), [&](std::size_t i) {
    const TransverseVector r{radii[i], 0.0};
    values[i] = std::norm(eval.amplitude(r, r)) / reference;
  });
  return ScanProfile({radii.begin(), radii.end()}, std::move(values), Normalization::PeakNormalized);
}

}  // namespace

BiphotonSource::BiphotonSource(Model model) : model_(model) {
  if (const auto* g = std::get_if<GaussianCorrelated>(&model_)) {
    if (!(std::isfinite(g->correlation_width) && g->correlation_width > 0.0))
      throw InvalidArgument("correlation width must be positive");
    if (!(std::isfinite(g->beam_width) && g->beam_width > 0.0)) throw InvalidArgument("beam width must be positive");
    if (g->correlation_width > g->beam_width)
      throw InvalidArgument("correlation width must not exceed beam width");
  }
}

double BiphotonSource::correlation(const TransverseVector& r1, const TransverseVector& r2) const {
  const auto& g = gaussian_model(*this);
  const TransverseVector d = r1 - r2;
  const TransverseVector s = r1 + r2;
  return std::exp(-d.dot(d) / (2.0 * g.correlation_width * g.correlation_width)) *
         std::exp(-s.dot(s) / (8.0 * g.beam_width * g.beam_width));
}

double max_detector_radius(const QuadratureSpec& quad, const OpticalConfig& cfg) {
  return cfg.lambda_f() / (4.0 * quad.step());
}

std::size_t min_samples_per_axis(double half_extent, double r_max, const OpticalConfig& cfg) {
  if (!(half_extent > 0.0) || !(r_max >= 0.0)) throw InvalidArgument("min_samples_per_axis: invalid window");
  const double n = std::ceil(8.0 * half_extent * r_max / cfg.lambda_f());
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

void validate_quadrature(const QuadratureSpec& quad, const ApertureMask& mask, const OpticalConfig& cfg,
                         double r_max) {
  if (!(std::isfinite(quad.half_extent) && quad.half_extent > 0.0))
    throw InvalidArgument("quadrature half extent must be positive");
  if (quad.samples_per_axis == 0) throw InvalidArgument("quadrature needs at least one sample per axis");
  if (quad.half_extent < mask.bounding_half_extent())
    throw InvalidArgument("quadrature window (half extent " + std::to_string(quad.half_extent) +
                          " m) does not cover the mask (" + std::to_string(mask.bounding_half_extent()) + " m)");
  // Same integer test as min_samples_per_axis so the reported minimum is always accepted.
  const std::size_t needed = min_samples_per_axis(quad.half_extent, r_max, cfg);
  if (quad.samples_per_axis < needed)
    throw ResolutionError("quadrature step " + std::to_string(quad.step()) + " m aliases detector radius " +
                          std::to_string(r_max) + " m; need at least " + std::to_string(needed) +
                          " samples per axis");
}

SampledAperture::SampledAperture(const ApertureMask& mask, const QuadratureSpec& quad)
    : n_(quad.samples_per_axis), step_(quad.step()), coords_(n_), cells_(n_ * n_) {
  for (std::size_t i = 0; i < n_; ++i) coords_[i] = -quad.half_extent + (static_cast<double>(i) + 0.5) * step_;
  for (std::size_t row = 0; row < n_; ++row)
    for (std::size_t col = 0; col < n_; ++col)
      cells_[row * n_ + col] = mask_transmittance(mask, {coords_[col], coords_[row]});
}

Complex biphoton_amplitude_ideal(const TransverseVector& r1, const TransverseVector& r2, const ApertureMask& mask,
                                 const OpticalConfig& cfg, const QuadratureSpec& quad) {
  require_finite(r1, "r1");
  require_finite(r2, "r2");
  validate_quadrature(quad, mask, cfg, detector_radius(r1, r2));
  return IdealEvaluator(mask, cfg, quad).amplitude(r1, r2);
}

Complex biphoton_amplitude_general(const TransverseVector& r1, const TransverseVector& r2, const ApertureMask& mask,
                                   const BiphotonSource& source, const OpticalConfig& cfg,
                                   const QuadratureSpec& quad, std::uint64_t budget) {
  require_finite(r1, "r1");
  require_finite(r2, "r2");
  const auto& model = gaussian_model(source);
  validate_quadrature(quad, mask, cfg, detector_radius(r1, r2));
  check_budget(quad, budget);
  return GaussianEvaluator(mask, model, cfg, quad).amplitude(r1, r2);
}

double coincidence_rate(const TransverseVector& r1, const TransverseVector& r2, const ApertureMask& mask,
                        const BiphotonSource& source, const OpticalConfig& cfg, const QuadratureSpec& quad,
                        std::uint64_t budget) {
  if (source.is_ideal()) return std::norm(biphoton_amplitude_ideal(r1, r2, mask, cfg, quad));
  return std::norm(biphoton_amplitude_general(r1, r2, mask, source, cfg, quad, budget));
}

ScanProfile degenerate_profile(const ApertureMask& mask, const OpticalConfig& cfg, std::span<const double> radii,
                               const QuadratureSpec& quad) {
  validate_quadrature(quad, mask, cfg, max_abs(radii));
  return normalized_profile(IdealEvaluator(mask, cfg, quad), radii);
}

ScanProfile degenerate_profile(const ApertureMask& mask, const BiphotonSource& source, const OpticalConfig& cfg,
                               std::span<const double> radii, const QuadratureSpec& quad, std::uint64_t budget) {
  if (source.is_ideal()) return degenerate_profile(mask, cfg, radii, quad);
  validate_quadrature(quad, mask, cfg, max_abs(radii));
  check_budget(quad, budget);
  return normalized_profile(GaussianEvaluator(mask, gaussian_model(source), cfg, quad), radii);
}

}  // namespace twophoton
