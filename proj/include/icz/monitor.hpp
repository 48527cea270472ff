#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icz/complex.hpp"

namespace icz {

inline constexpr double kDefaultThresholdPct = 2.5;

struct BaselineRecord {
  Complex impedance;
  double f_sig_hz = 0.0;
  std::string label;
  std::string captured_at;  // ISO 8601, informational

  void validate() const;
};

struct OperatingPoint {
  std::optional<double> rpm;
  std::optional<double> vfd_hz;
  std::optional<std::string> load_label;

  void validate() const;
};

enum class Classification { Healthy, StatorFaultSuspected };

const char* to_string(Classification c) noexcept;

struct FaultVerdict {
  double relative_change_pct = 0.0;
  /// |Zb - Zm| / |Zb|; diagnostic only, never used to classify.
  double complex_change_pct = 0.0;
  double threshold_pct = kDefaultThresholdPct;
  Classification classification = Classification::Healthy;
  BaselineRecord baseline;
  Complex measured;
};

/// | |baseline| - |measured| | / |baseline| * 100.
double relative_change(Complex baseline, Complex measured);

/// |baseline - measured| / |baseline| * 100.
double complex_relative_change(Complex baseline, Complex measured);

FaultVerdict classify(const BaselineRecord& baseline, Complex measured,
                      double threshold_pct = kDefaultThresholdPct);

struct SeriesEntry {
  OperatingPoint point;
  Complex measured;
  std::string label;
};

/// One verdict per entry, in order. Errors carry the failing entry index.
std::vector<FaultVerdict> sweep_report(const BaselineRecord& baseline,
                                       std::span<const SeriesEntry> series,
                                       double threshold_pct = kDefaultThresholdPct);

}  // namespace icz
