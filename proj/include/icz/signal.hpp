#pragma once

#include <span>
#include <vector>

#include "icz/complex.hpp"

namespace icz {

/// Uniformly sampled real voltage record.
struct Waveform {
  double sample_rate_hz = 0.0;
  std::vector<double> samples;

  static constexpr std::size_t kMinLength = 16;

  void validate() const;
};

struct ToneEstimate {
  double frequency_hz = 0.0;
  Complex phasor;  // volts; A*cos(2*pi*f*t + phi) -> A at phi
  double snr_db = 0.0;
};

/// Samples actually analysed for a tone at f.
struct AnalysisWindow {
  std::size_t length = 0;
  bool hann = false;
};

/// Largest whole number of periods of f that fits, or the full record with a
/// Hann taper when fewer than 5 periods fit.
AnalysisWindow plan_window(std::size_t n_samples, double sample_rate_hz, double f_hz);

/// Complex amplitude of the f component over the planned window.
ToneEstimate goertzel_single_bin(const Waveform& w, double f_hz);

/// Raw DFT value sum x[n] exp(-j omega n) by the Goertzel recursion.
Complex goertzel_dft(std::span<const double> x, double omega);

/// Median amplitude over 32 bins offset 4..19 bin spacings either side of f.
double noise_floor(const Waveform& w, double f_hz);

/// phasor(w1) / phasor(w2) at f. Throws DeadChannel when w2 has no usable tone.
Complex complex_ratio(const Waveform& w1, const Waveform& w2, double f_hz);

/// Candidate with the least background power; ties go to the lower frequency.
double scan_injection_frequency(const Waveform& background, std::span<const double> candidates);

}  // namespace icz
