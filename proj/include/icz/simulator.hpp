#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "icz/calibration.hpp"
#include "icz/rlc.hpp"
#include "icz/signal.hpp"
#include "icz/twoport.hpp"

namespace icz {

/// Stator winding: (r_s + jw l_s (1-eta)^2) in parallel with (r_p + 1/(jw c_p)).
/// eta is the fraction of shorted turns.
struct MotorWindingModel {
  double r_s = 10.0;
  double l_s = 0.0;
  double c_p = 0.0;
  double r_p = 50.0;
  double fault_fraction = 0.0;

  void validate() const;
};

Complex motor_impedance(const MotorWindingModel& m, double f_hz);

/// Solves l_s and c_p so that the healthy winding shows `target` at f,
/// with r_s and r_p held fixed.
MotorWindingModel fit_motor_baseline(Complex target, double f_hz, double r_s, double r_p);

/// Fault fraction in (0, 1) at which |Z| reaches target_magnitude.
double fit_fault_fraction(const MotorWindingModel& healthy, double f_hz, double target_magnitude);

/// Probe-to-probe coupling. The coupling path impedance is (r_p + jw m0) at
/// zero separation and grows as exp(d/d0) as the probes move apart.
struct PpcModel {
  double m0_h = 10e-6;
  double d_m = 0.1;
  double d0_m = 0.008;
  double r_p = 1.0;

  void validate() const;
};

Complex ppc_impedance(const PpcModel& p, double f_hz);

/// Impedance at one frequency, or a table interpolated linearly in re/im.
struct FixedImpedance {
  Complex z;
};

struct ImpedanceTable {
  std::vector<std::pair<double, Complex>> points;  // strictly increasing frequency
};

using SutModel = std::variant<FixedImpedance, ImpedanceTable, RlcNetwork, MotorWindingModel>;

Complex sut_impedance(const SutModel& sut, double f_hz);

/// V1/V2 for the SUT seen through the probes; a present ppc sits in parallel.
Complex simulate_ratio(Complex sut_z, const TwoPortAbcd& iip, const TwoPortAbcd& rip,
                       const TerminationConfig& term, std::optional<Complex> ppc = std::nullopt);

/// Jig measurements the chain would produce. Without PPC the open standard is
/// unmeasurable and the set is two-point only.
CalibrationSet simulate_calibration(const TwoPortAbcd& iip, const TwoPortAbcd& rip,
                                    const TerminationConfig& term, std::optional<Complex> ppc,
                                    double f_hz, Complex z_load = Complex{50.0});

struct ProbeParams {
  double turns_ratio = 1.0;
  double magnetizing_l = 100e-6;
  double leakage_l = 0.5e-6;
  double winding_r = 0.2;
};

/// Ideal n:1 transformer, then shunt magnetizing inductance, then series
/// winding resistance and leakage.
TwoPortAbcd synthesize_probe_abcd(const ProbeParams& p, double f_hz);

struct InterferenceTone {
  double frequency_hz = 0.0;
  double amplitude = 0.0;  // relative to a 1 V test tone
  double phase_deg = 0.0;
};

/// Additive noise, expressed relative to a 1 V test tone and scaled with each
/// channel's tone amplitude.
struct NoiseModel {
  double white_noise_rms = 0.0;
  std::vector<InterferenceTone> interference_tones;

  void validate() const;

  static NoiseModel silent() { return {}; }
  /// 1% white noise; mains (50 Hz) and VFD fundamentals plus 5 harmonics at 0.5%.
  static NoiseModel defaults(double vfd_hz = 20.0);
};

/// Noise rms for a requested per-channel SNR in dB.
double white_rms_for_snr(double snr_db);

/// (C1, C2) records: C2 is a unit tone, C1 the same tone times `ratio`.
std::pair<Waveform, Waveform> synthesize_waveforms(Complex ratio, double f_sig_hz,
                                                   const NoiseModel& noise,
                                                   double sample_rate_hz, double duration_s,
                                                   std::uint64_t seed);

/// N(0,1) stream by Box-Muller over mt19937_64, whose output sequence is fixed
/// by the standard, so a seed reproduces the same noise on every platform.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace icz
