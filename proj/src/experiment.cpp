#include "twophoton/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "twophoton/bessel.hpp"

namespace twophoton {

namespace {

constexpr int kRadialNodes = 8;
constexpr int kAngularNodes = 16;

struct GaussLegendre {
  std::array<double, kRadialNodes> nodes{};    // on [0, 1]
  std::array<double, kRadialNodes> weights{};  // sum to 1
};

GaussLegendre make_gauss_legendre() {
  GaussLegendre gl;
  constexpr int n = kRadialNodes;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = 0.5 * (x + 1.0);
    gl.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // half the [-1,1] weight
  }
  return gl;
}

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre gl = make_gauss_legendre();
  return gl;
}

bool nonneg_finite(double v) { return std::isfinite(v) && v >= 0.0; }

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Vector3 = std::array<double, 3>;

// Solves m·x = b by Gaussian elimination with partial pivoting; false when singular.
bool solve3(Matrix3 m, Vector3 b, Vector3& x) {
  for (int c = 0; c < 3; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    if (m[pivot][c] == 0.0 || !std::isfinite(m[pivot][c])) return false;
    std::swap(m[c], m[pivot]);
    std::swap(b[c], b[pivot]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 3; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= m[r][k] * x[k];
    x[r] = s / m[r][r];
  }
  return true;
}

bool invert3(const Matrix3& m, Matrix3& inv) {
  for (int c = 0; c < 3; ++c) {
    Vector3 e{};
    e[c] = 1.0;
    Vector3 col{};
    if (!solve3(m, e, col)) return false;
    for (int r = 0; r < 3; ++r) inv[r][c] = col[r];
  }
  // Symmetrize away rounding.
  for (int r = 0; r < 3; ++r)
    for (int c = r + 1; c < 3; ++c) inv[r][c] = inv[c][r] = 0.5 * (inv[r][c] + inv[c][r]);
  return true;
}

struct NormalEquations {
  Matrix3 alpha{};
  Vector3 beta{};
  double chi_square = 0.0;
};

class AiryModel {
 public:
  AiryModel(double a, const OpticalConfig& cfg, AiryPattern pattern, double pinhole)
      : pinhole_(pinhole), kernel_(airy_profile_fn(pattern, a, cfg)) {}

  double shape(double r) const { return pinhole_average(kernel_, r, pinhole_); }

 private:
  double pinhole_;
  ProfileFn kernel_;
};

NormalEquations build(std::span<const double> x, std::span<const double> counts, const Vector3& p,
                      const AiryModel& model, double fd_step) {
  NormalEquations eq;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x[i] - p[1];
    const double k = model.shape(u);
    const double dk = (model.shape(u + fd_step) - model.shape(u - fd_step)) / (2.0 * fd_step);
    const Vector3 jac{k, -p[0] * dk, 1.0};
    const double w = 1.0 / std::max(counts[i], 1.0);
    const double res = counts[i] - (p[0] * k + p[2]);
    eq.chi_square += w * res * res;
    for (int r = 0; r < 3; ++r) {
      eq.beta[r] += w * jac[r] * res;
      for (int c = 0; c < 3; ++c) eq.alpha[r][c] += w * jac[r] * jac[c];
    }
  }
  return eq;
}

double chi_square(std::span<const double> x, std::span<const double> counts, const Vector3& p,
                  const AiryModel& model) {
  double chi = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double res = counts[i] - (p[0] * model.shape(x[i] - p[1]) + p[2]);
    chi += res * res / std::max(counts[i], 1.0);
  }
  return chi;
}

}  // namespace

void DetectorModel::validate() const {
  if (!nonneg_finite(pinhole_radius)) throw InvalidArgument("pinhole radius must be finite and non-negative");
  if (!nonneg_finite(pair_flux)) throw InvalidArgument("pair flux must be finite and non-negative");
  if (!nonneg_finite(singles_rate)) throw InvalidArgument("singles rate must be finite and non-negative");
  if (!(std::isfinite(dwell_time) && dwell_time > 0.0)) throw InvalidArgument("dwell time must be positive");
  if (!(std::isfinite(coincidence_window) && coincidence_window > 0.0))
    throw InvalidArgument("coincidence window must be positive");
  if (!(coincidence_window <= 1e-3 * dwell_time))
    throw InvalidArgument("coincidence window must be much shorter than the dwell time");
}

ProfileFn airy_profile_fn(AiryPattern pattern, double a, const OpticalConfig& cfg) {
  const double scale = airy_argument(pattern, a, cfg, 1.0);
  return [scale](double r) { return airy_kernel(scale * r); };
}

double pinhole_average(const ProfileFn& profile, double x, double pinhole_radius) {
  if (pinhole_radius == 0.0) return profile(std::abs(x));
  const auto& gl = gauss_legendre();
  double sum = 0.0;
  for (int k = 0; k < kRadialNodes; ++k) {
    const double rho = pinhole_radius * gl.nodes[k];
    double ring = 0.0;
    for (int m = 0; m < kAngularNodes; ++m) {
      const double theta = 2.0 * std::numbers::pi * (m + 0.5) / kAngularNodes;
      ring += profile(std::hypot(x + rho * std::cos(theta), rho * std::sin(theta)));
    }
    // Area element t dt dθ over the unit disk, normalized by π.
    sum += gl.weights[k] * gl.nodes[k] * ring;
  }
  return 2.0 * sum / kAngularNodes;
}

double expected_counts(double position, const DetectorModel& model, const ProfileFn& profile, double background) {
  model.validate();
  if (!std::isfinite(position)) throw DomainError("scan position must be finite");
  if (!nonneg_finite(background)) throw InvalidArgument("background must be finite and non-negative");
  const double signal = model.pair_flux * model.dwell_time * pinhole_average(profile, position, model.pinhole_radius);
  return signal + model.accidentals() + background;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t poisson_inversion(double mean, std::mt19937_64& rng) {
  if (!nonneg_finite(mean)) throw InvalidArgument("Poisson mean must be finite and non-negative");
  const double u = uniform01(rng);
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  const double limit = mean + 40.0 * std::sqrt(mean) + 50.0;
  while (u >= cdf && static_cast<double>(k) < limit) {
    ++k;
    p *= mean / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

std::uint64_t poisson_draw(double mean, std::mt19937_64& rng) {
  if (mean <= kPoissonNormalCutoff) return poisson_inversion(mean, rng);
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  const double draw = std::round(mean + std::sqrt(mean) * z);
  return draw <= 0.0 ? 0 : static_cast<std::uint64_t>(draw);
}

std::vector<CountRecord> simulate_scan(std::span<const double> positions, const DetectorModel& model,
                                       const ProfileFn& profile, double background) {
  model.validate();
  std::mt19937_64 rng(model.rng_seed);
  std::vector<CountRecord> out;
  out.reserve(positions.size());
  for (double x : positions) {
    CountRecord rec;
    rec.position = x;
    rec.expected = expected_counts(x, model, profile, background);
    rec.accidental_estimate = model.accidentals();
    rec.coincidences = poisson_draw(rec.expected, rng);
    out.push_back(rec);
  }
  return out;
}

FitResult fit_counts(std::span<const double> positions, std::span<const double> counts, double a,
                     const OpticalConfig& cfg, AiryPattern pattern, const FitOptions& options) {
  if (positions.size() != counts.size()) throw InvalidArgument("fit: positions and counts differ in length");
  if (positions.size() < 10) throw InvalidArgument("fit: need at least 10 records");
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (!std::isfinite(positions[i]) || !nonneg_finite(counts[i]))
      throw InvalidArgument("fit: positions must be finite and counts non-negative");
  if (!nonneg_finite(options.pinhole_radius)) throw InvalidArgument("fit: pinhole radius must be non-negative");

  const double zero_radius = airy_first_zero_radius(pattern, a, cfg);
  const AiryModel model(a, cfg, pattern, options.pinhole_radius);

  const auto peak = static_cast<std::size_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  const double lowest = *std::min_element(counts.begin(), counts.end());
  Vector3 p{std::max(counts[peak] - lowest, 1.0), positions[peak], lowest};
  const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
  if (*hi - p[1] < zero_radius && p[1] - *lo < zero_radius)
    throw InvalidArgument("fit: scan does not reach past the first zero of the pattern");

  const double fd_step = 1e-5 * zero_radius;
  const Vector3 scale{std::max(std::abs(p[0]), 1.0), zero_radius, std::max(std::abs(p[0]), 1.0)};

  auto make_result = [&](const Vector3& params, const NormalEquations& eq, int iterations) {
    FitResult r;
    r.amplitude = params[0];
    r.center_offset = params[1];
    r.background = params[2];
    r.chi_square = eq.chi_square;
    r.reduced_chi_square = eq.chi_square / static_cast<double>(positions.size() - 3);
    r.iterations = iterations;
    r.first_zero_estimate = params[1] + zero_radius;
    Matrix3 cov{};
    if (invert3(eq.alpha, cov)) {
      r.covariance = cov;
      r.first_zero_uncertainty = std::sqrt(std::max(cov[1][1], 0.0));
    } else {
      for (auto& row : r.covariance) row.fill(std::numeric_limits<double>::quiet_NaN());
      r.first_zero_uncertainty = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
  };

  double lambda = 1e-3;
  NormalEquations eq = build(positions, counts, p, model, fd_step);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    Matrix3 damped = eq.alpha;
    for (int d = 0; d < 3; ++d) damped[d][d] *= 1.0 + lambda;
    Vector3 delta{};
    if (!solve3(damped, eq.beta, delta)) throw FitFailure("fit: singular normal equations", make_result(p, eq, iter));

    const Vector3 trial{p[0] + delta[0], p[1] + delta[1], p[2] + delta[2]};
    const double trial_chi = chi_square(positions, counts, trial, model);
    bool small_step = true;
    for (int d = 0; d < 3; ++d) small_step = small_step && std::abs(delta[d]) <= 1e-10 * scale[d];

    if (std::isfinite(trial_chi) && trial_chi <= eq.chi_square) {
      const double drop = eq.chi_square - trial_chi;
      p = trial;
      eq = build(positions, counts, p, model, fd_step);
      lambda = std::max(lambda * 0.1, 1e-12);
      if (small_step || drop <= 1e-12 * eq.chi_square) return make_result(p, eq, iter);
    } else {
      lambda *= 10.0;
      // No downhill step exists at any damping: already at the minimum.
      if (small_step || lambda > 1e12) return make_result(p, eq, iter);
    }
  }
  throw FitFailure("fit: no convergence after " + std::to_string(options.max_iterations) + " iterations",
                   make_result(p, eq, options.max_iterations));
}

FitResult fit_profile(std::span<const CountRecord> records, double a, const OpticalConfig& cfg, AiryPattern pattern,
                      const FitOptions& options) {
  std::vector<double> x;
  std::vector<double> c;
  x.reserve(records.size());
  c.reserve(records.size());
  for (const auto& r : records) {
    x.push_back(r.position);
    c.push_back(static_cast<double>(r.coincidences));
  }
  return fit_counts(x, c, a, cfg, pattern, options);
}

std::vector<double> scan_positions_from_mirror(std::span<const double> angles, double lever_arm) {
  if (!(std::isfinite(lever_arm) && lever_arm > 0.0)) throw InvalidArgument("lever arm must be positive");
  std::vector<double> out;
  out.reserve(angles.size());
  for (double theta : angles) {
    if (!std::isfinite(theta) || std::abs(theta) >= 0.05)
      throw DomainError("mirror angle outside the small-angle domain |theta| < 0.05 rad");
    out.push_back(2.0 * theta * lever_arm);
  }
  return out;
}

}  // namespace twophoton
