#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "icz/error.hpp"

namespace icz {

/// Rectangular complex value. Impedances are in ohms, ratios dimensionless.
using Complex = std::complex<double>;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline Complex require_finite(Complex z, const char* what) {
  if (!is_finite(z)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " is not finite");
  }
  return z;
}

inline double magnitude(Complex z) noexcept { return std::abs(z); }

/// Angle in degrees, folded into (-180, 180].
inline double angle_deg(Complex z) noexcept {
  double deg = std::arg(z) * 180.0 / std::numbers::pi;
  if (deg <= -180.0) deg += 360.0;
  return deg;
}

inline Complex from_polar_deg(double mag, double deg) {
  return std::polar(mag, deg * std::numbers::pi / 180.0);
}

/// z1 || z2.
inline Complex parallel(Complex z1, Complex z2) { return z1 * z2 / (z1 + z2); }

}  // namespace icz
