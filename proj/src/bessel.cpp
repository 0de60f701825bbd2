#include "twophoton/bessel.hpp"

#include <cmath>
#include <numbers>

#include "twophoton/errors.hpp"

namespace twophoton {

namespace {

// Above this the ascending series loses too many digits to cancellation and
// the Hankel expansion is already accurate to ~1e-11.
constexpr double kSeriesLimit = 12.0;

// Σ (-1)^k (x²/4)^k / (k!(k+1)!)  =  2·J1(x)/x
double jinc_series(double x) {
  const double z = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= z / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
  }
  return sum;
}

// Hankel asymptotic expansion for x > 0, truncated at the smallest term.
double j1_asymptotic(double x) {
  constexpr double mu = 4.0;  // 4ν², ν = 1
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = INFINITY;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > prev || mag < 1e-17) break;
    prev = mag;
    // term_k carries the coefficient of x^-k; signs alternate in pairs.
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0)
      p += sign * term;
    else
      q += sign * term;
  }
  const double chi = x - 0.75 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

void require_finite(double x) {
  if (!std::isfinite(x)) throw DomainError("Bessel argument must be finite");
}

}  // namespace

double bessel_j1(double x) {
  require_finite(x);
  const double ax = std::abs(x);
  const double value = ax <= kSeriesLimit ? 0.5 * ax * jinc_series(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -value : value;
}

double jinc(double x) {
  require_finite(x);
  const double ax = std::abs(x);
  if (ax <= kSeriesLimit) return jinc_series(ax);
  return 2.0 * j1_asymptotic(ax) / ax;
}

double airy_kernel(double x) {
  const double v = jinc(x);
  return std::min(v * v, 1.0);
}

}  // namespace twophoton
