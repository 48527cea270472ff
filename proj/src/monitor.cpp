#include "icz/monitor.hpp"

namespace icz {

namespace {

double baseline_magnitude(Complex baseline) {
  const double mag = std::abs(baseline);
  if (!(mag > 0.0) || !std::isfinite(mag)) {
    throw Error(ErrorKind::ZeroBaseline, "baseline impedance must be non-zero and finite");
  }
  return mag;
}

}  // namespace

void BaselineRecord::validate() const {
  baseline_magnitude(impedance);
  if (!(f_sig_hz >= 0.0) || !std::isfinite(f_sig_hz)) {
    throw Error(ErrorKind::InvalidArgument, "baseline f_sig must be >= 0");
  }
}

void OperatingPoint::validate() const {
  if (rpm && !(*rpm >= 0.0)) throw Error(ErrorKind::InvalidArgument, "rpm must be >= 0");
  if (vfd_hz && !(*vfd_hz > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "VFD frequency must be > 0");
  }
}

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Healthy: return "HEALTHY";
    case Classification::StatorFaultSuspected: return "STATOR_FAULT_SUSPECTED";
  }
  return "UNKNOWN";
}

double relative_change(Complex baseline, Complex measured) {
  const double ref = baseline_magnitude(baseline);
  require_finite(measured, "measured impedance");
  return std::abs(ref - std::abs(measured)) / ref * 100.0;
}

double complex_relative_change(Complex baseline, Complex measured) {
  const double ref = baseline_magnitude(baseline);
  require_finite(measured, "measured impedance");
  return std::abs(baseline - measured) / ref * 100.0;
}

FaultVerdict classify(const BaselineRecord& baseline, Complex measured, double threshold_pct) {
  baseline.validate();
  if (!(threshold_pct > 0.0) || !std::isfinite(threshold_pct)) {
    throw Error(ErrorKind::InvalidArgument, "threshold must be > 0 %");
  }
  FaultVerdict v;
  v.relative_change_pct = relative_change(baseline.impedance, measured);
  v.complex_change_pct = complex_relative_change(baseline.impedance, measured);
  v.threshold_pct = threshold_pct;
  v.classification = v.relative_change_pct > threshold_pct ? Classification::StatorFaultSuspected
                                                           : Classification::Healthy;
  v.baseline = baseline;
  v.measured = measured;
  return v;
}

std::vector<FaultVerdict> sweep_report(const BaselineRecord& baseline,
                                       std::span<const SeriesEntry> series,
                                       double threshold_pct) {
  if (series.empty()) throw Error(ErrorKind::InvalidArgument, "empty measurement series");
  std::vector<FaultVerdict> out;
  out.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    try {
      series[i].point.validate();
      out.push_back(classify(baseline, series[i].measured, threshold_pct));
    } catch (const Error& e) {
      throw Error(e.kind(), "entry " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace icz
