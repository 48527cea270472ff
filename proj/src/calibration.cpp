#include "icz/calibration.hpp"

#include <algorithm>
#include <sstream>

namespace icz {

namespace {

void require_apart(Complex x, Complex y, const char* what) {
  const double eps = CalibrationSet::epsilon(x, y);
  if (!(std::abs(x - y) > eps)) {
    std::ostringstream msg;
    msg << "degenerate calibration: " << what << " differ by " << std::abs(x - y)
        << " (threshold " << eps << ")";
    throw Error(ErrorKind::DegenerateCalibration, msg.str());
  }
}

}  // namespace

double CalibrationSet::epsilon(Complex x, Complex y) {
  return 1e-9 * std::max(std::abs(x), std::abs(y));
}

void CalibrationSet::validate() const {
  if (!(f_sig_hz > 0.0) || !std::isfinite(f_sig_hz)) {
    throw Error(ErrorKind::InvalidArgument, "calibration f_sig must be positive");
  }
  require_finite(r_short, "r_short");
  require_finite(r_load, "r_load");
  require_finite(z_load, "z_load");
  if (r_open) require_finite(*r_open, "r_open");

  require_apart(r_load, r_short, "r_load and r_short");
  if (r_open) {
    require_apart(*r_open, r_short, "r_open and r_short");
    require_apart(*r_open, r_load, "r_open and r_load");
  }
}

CalibrationCoefficients solve_osl(const CalibrationSet& cal) {
  if (!cal.r_open) {
    throw Error(ErrorKind::InvalidArgument, "OSL calibration needs an open measurement");
  }
  cal.validate();
  const Complex ro = *cal.r_open;
  const Complex rs = cal.r_short;
  const Complex rl = cal.r_load;

  CalibrationCoefficients out;
  out.k = cal.z_load * (ro - rl) / ((ro - rs) * (rl - rs));
  out.b = -out.k * rs;
  out.z_ppc = cal.z_load * (ro - rl) / (rl - rs);
  return out;
}

CalibrationCoefficients solve_two_point(const CalibrationSet& cal) {
  cal.validate();
  CalibrationCoefficients out;
  out.k = cal.z_load / (cal.r_load - cal.r_short);
  out.b = -out.k * cal.r_short;
  return out;
}

Complex extract_impedance_osl(Complex ratio, const CalibrationSet& cal) {
  if (!cal.r_open) {
    throw Error(ErrorKind::InvalidArgument, "OSL extraction needs an open measurement");
  }
  cal.validate();
  require_finite(ratio, "ratio");
  const Complex ro = *cal.r_open;
  if (!(std::abs(ro - ratio) > CalibrationSet::epsilon(ro, ratio))) {
    throw Error(ErrorKind::OpenIndistinguishable,
                "measured ratio is indistinguishable from the open standard");
  }
  return cal.z_load * (ro - cal.r_load) * (ratio - cal.r_short) /
         ((cal.r_load - cal.r_short) * (ro - ratio));
}

Complex extract_impedance_two_point(Complex ratio, const CalibrationSet& cal) {
  cal.validate();
  require_finite(ratio, "ratio");
  return cal.z_load * (ratio - cal.r_short) / (cal.r_load - cal.r_short);
}

Complex extract_impedance(Complex ratio, const CalibrationSet& cal) {
  return cal.has_open() ? extract_impedance_osl(ratio, cal)
                        : extract_impedance_two_point(ratio, cal);
}

Complex extract_with_coefficients(Complex ratio, const CalibrationCoefficients& coeffs) {
  const Complex z_meas = coeffs.k * ratio + coeffs.b;
  if (!coeffs.z_ppc) return z_meas;
  const Complex zp = *coeffs.z_ppc;
  if (std::abs(zp - z_meas) == 0.0) {
    throw Error(ErrorKind::OpenIndistinguishable, "measurement equals the PPC impedance");
  }
  return z_meas * zp / (zp - z_meas);
}

Complex ppc_error(Complex z_total, Complex z_ppc) {
  require_finite(z_total, "z_total");
  require_finite(z_ppc, "z_ppc");
  const Complex sum = z_total + z_ppc;
  if (std::abs(sum) <= 1e-12 * std::max(std::abs(z_total), std::abs(z_ppc))) {
    throw Error(ErrorKind::Resonance, "z_total and z_ppc cancel (anti-parallel resonance)");
  }
  return -z_total / sum;
}

}  // namespace icz
