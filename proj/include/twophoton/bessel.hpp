#pragma once

namespace twophoton {

/// Bessel function of the first kind, order one. Exactly odd in x.
/// Throws DomainError for non-finite input.
double bessel_j1(double x);

/// 2·J1(x)/x with the removable singularity filled in (value 1 at x = 0).
double jinc(double x);

/// Normalized Airy pattern |2·J1(x)/x|², in [0, 1], equal to 1 at x = 0.
double airy_kernel(double x);

/// First positive zero of J1.
inline constexpr double kBesselJ1FirstZero = 3.8317059702075123;

}  // namespace twophoton
