#pragma once

#include <optional>

#include "icz/complex.hpp"

namespace icz {

/// V1/V2 ratios measured on the calibration jig at one injection frequency.
/// r_open is absent for a two-point (short + load) calibration.
struct CalibrationSet {
  double f_sig_hz = 0.0;
  std::optional<Complex> r_open;
  Complex r_short;
  Complex r_load;
  Complex z_load{50.0};

  bool has_open() const { return r_open.has_value(); }

  /// Degeneracy threshold for a pair of ratios: 1e-9 times the larger magnitude.
  static double epsilon(Complex x, Complex y);

  /// Throws InvalidArgument or DegenerateCalibration.
  void validate() const;
};

struct CalibrationCoefficients {
  Complex k;  // ohm per unit ratio
  Complex b;  // ohm
  std::optional<Complex> z_ppc;
};

/// Full open/short/load solution for k, b and the probe-to-probe coupling
/// impedance.
CalibrationCoefficients solve_osl(const CalibrationSet& cal);

/// Short/load only; PPC assumed negligible so z_ppc is left empty.
CalibrationCoefficients solve_two_point(const CalibrationSet& cal);

Complex extract_impedance_osl(Complex ratio, const CalibrationSet& cal);

Complex extract_impedance_two_point(Complex ratio, const CalibrationSet& cal);

/// OSL when the set carries an open measurement, two-point otherwise.
Complex extract_impedance(Complex ratio, const CalibrationSet& cal);

/// Applies k*ratio + b and, when z_ppc is known, removes it from in parallel.
Complex extract_with_coefficients(Complex ratio, const CalibrationCoefficients& coeffs);

/// Relative error -z/(z + z_ppc) that a parallel z_ppc imposes on z.
Complex ppc_error(Complex z_total, Complex z_ppc);

}  // namespace icz
