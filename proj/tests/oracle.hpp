#pragma once

// Independent reference values for the tests. J1 comes from its ascending
// series summed in 50-digit arithmetic, so it shares no code or constants
// with the library implementation.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

// J1(x) = sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
inline double j1_series(double x) {
  const Big half = Big(x) / 2;
  const Big half_sq = half * half;
  Big term = half;
  Big sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -half_sq / (Big(k) * Big(k + 1));
    sum += term;
    if (abs(term) < Big("1e-40") * (abs(sum) + 1)) break;
  }
  return static_cast<double>(sum);
}

inline double airy_series(double x) {
  if (x == 0.0) return 1.0;
  const double j = 2.0 * j1_series(x) / x;
  return j * j;
}

template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::abs(hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Zeros of J1 bracketed by the usual spacing near (n + 1/4) pi.
inline double j1_zero(int n) {
  const double guess = (n + 0.25) * std::numbers::pi;
  return bisect(j1_series, guess - 0.6, guess + 0.6);
}

inline double j1_first_zero() { return j1_zero(1); }

// Half-maximum abscissa of (2 J1(x)/x)^2.
inline double airy_half_max() {
  return bisect([](double x) { return airy_series(x) - 0.5; }, 1.0, 2.5);
}

// Direct double-slit transform, integrated in closed form slit by slit.
inline double slit_pair_1d(double width, double separation, double qx) {
  if (qx == 0.0) return 2.0 * width;
  const double lo1 = -separation / 2 - width / 2, hi1 = -separation / 2 + width / 2;
  const double lo2 = separation / 2 - width / 2, hi2 = separation / 2 + width / 2;
  // integral of cos(qx x) over both slits; the sine parts cancel
  return (std::sin(qx * hi1) - std::sin(qx * lo1) + std::sin(qx * hi2) - std::sin(qx * lo2)) / qx;
}

}  // namespace oracle
