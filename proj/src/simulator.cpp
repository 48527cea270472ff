#include "icz/simulator.hpp"

#include <cmath>
#include <sstream>

#include "icz/kernels.hpp"

namespace icz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be a positive number");
  }
}

// Bisection on a bracketed sign change of g.
template <typename G>
double bisect(G&& g, double lo, double hi) {
  double g_lo = g(lo);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = g(mid);
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void MotorWindingModel::validate() const {
  require_positive(r_s, "motor r_s");
  require_positive(l_s, "motor l_s");
  require_positive(c_p, "motor c_p");
  require_positive(r_p, "motor r_p");
  if (!(fault_fraction >= 0.0 && fault_fraction < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "motor fault_fraction must lie in [0, 1)");
  }
}

Complex motor_impedance(const MotorWindingModel& m, double f_hz) {
  m.validate();
  require_positive(f_hz, "frequency");
  const double w = kTwoPi * f_hz;
  const double keep = 1.0 - m.fault_fraction;
  const Complex winding{m.r_s, w * m.l_s * keep * keep};
  const Complex insulation = Complex{m.r_p} + 1.0 / Complex{0.0, w * m.c_p};
  return parallel(winding, insulation);
}

MotorWindingModel fit_motor_baseline(Complex target, double f_hz, double r_s, double r_p) {
  require_positive(f_hz, "frequency");
  require_positive(r_s, "r_s");
  require_positive(r_p, "r_p");
  const double w = kTwoPi * f_hz;
  const Complex y_target = 1.0 / target;
  // Winding branch admittance left over once the capacitive branch is removed.
  auto winding_z = [&](double log_c) {
    const Complex y_c = 1.0 / Complex{r_p, -1.0 / (w * std::exp(log_c))};
    return 1.0 / (y_target - y_c);
  };
  auto residual = [&](double log_c) { return winding_z(log_c).real() - r_s; };

  // Scan decades of capacitance for a sign change with a positive inductance.
  constexpr double kLo = -35.0;  // ln(6e-16 F)
  constexpr double kHi = -6.0;   // ln(2.5e-3 F)
  constexpr int kSteps = 4000;
  double prev = kLo;
  double g_prev = residual(prev);
  for (int i = 1; i <= kSteps; ++i) {
    const double cur = kLo + (kHi - kLo) * i / kSteps;
    const double g_cur = residual(cur);
    if (std::isfinite(g_prev) && std::isfinite(g_cur) && (g_prev < 0.0) != (g_cur < 0.0)) {
      const double log_c = bisect(residual, prev, cur);
      const double l_s = winding_z(log_c).imag() / w;
      if (l_s > 0.0 && std::abs(residual(log_c)) < 1e-6 * r_s) {
        return {r_s, l_s, std::exp(log_c), r_p, 0.0};
      }
    }
    prev = cur;
    g_prev = g_cur;
  }
  throw Error(ErrorKind::InvalidArgument,
              "no positive (l_s, c_p) reproduces the target impedance with this topology");
}

double fit_fault_fraction(const MotorWindingModel& healthy, double f_hz, double target_magnitude) {
  auto mismatch = [&](double eta) {
    MotorWindingModel m = healthy;
    m.fault_fraction = eta;
    return std::abs(motor_impedance(m, f_hz)) - target_magnitude;
  };
  const double g0 = mismatch(0.0);
  if (g0 == 0.0) return 0.0;
  constexpr int kSteps = 10000;
  double prev = 0.0;
  for (int i = 1; i < kSteps; ++i) {
    const double cur = static_cast<double>(i) / kSteps;
    if ((mismatch(cur) < 0.0) != (g0 < 0.0)) return bisect(mismatch, prev, cur);
    prev = cur;
  }
  throw Error(ErrorKind::InvalidArgument, "fault fraction cannot reach the target magnitude");
}

void PpcModel::validate() const {
  require_positive(m0_h, "PPC m0");
  require_positive(d0_m, "PPC d0");
  if (!(d_m >= 0.0) || !std::isfinite(d_m)) {
    throw Error(ErrorKind::InvalidArgument, "PPC distance must be >= 0");
  }
  if (!(r_p >= 0.0) || !std::isfinite(r_p)) {
    throw Error(ErrorKind::InvalidArgument, "PPC r_p must be >= 0");
  }
}

Complex ppc_impedance(const PpcModel& p, double f_hz) {
  p.validate();
  require_positive(f_hz, "frequency");
  return Complex{p.r_p, kTwoPi * f_hz * p.m0_h} * std::exp(p.d_m / p.d0_m);
}

Complex sut_impedance(const SutModel& sut, double f_hz) {
  struct Visitor {
    double f;
    Complex operator()(const FixedImpedance& s) const { return s.z; }
    Complex operator()(const RlcNetwork& s) const { return impedance_of_rlc(s, f); }
    Complex operator()(const MotorWindingModel& s) const { return motor_impedance(s, f); }
    Complex operator()(const ImpedanceTable& s) const {
      const auto& pts = s.points;
      if (pts.empty()) throw Error(ErrorKind::InvalidArgument, "empty impedance table");
      if (f < pts.front().first || f > pts.back().first) {
        throw Error(ErrorKind::OutOfBand, "frequency " + std::to_string(f) +
                                              " Hz outside the impedance table");
      }
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (f == pts[i].first) return pts[i].second;
        if (f < pts[i + 1].first) {
          const double t = (f - pts[i].first) / (pts[i + 1].first - pts[i].first);
          return pts[i].second + t * (pts[i + 1].second - pts[i].second);
        }
      }
      return pts.back().second;
    }
  };
  return std::visit(Visitor{f_hz}, sut);
}

Complex simulate_ratio(Complex sut_z, const TwoPortAbcd& iip, const TwoPortAbcd& rip,
                       const TerminationConfig& term, std::optional<Complex> ppc) {
  const Complex z = ppc ? parallel(sut_z, *ppc) : sut_z;
  return forward_ratio(iip, z, rip, term);
}

CalibrationSet simulate_calibration(const TwoPortAbcd& iip, const TwoPortAbcd& rip,
                                    const TerminationConfig& term, std::optional<Complex> ppc,
                                    double f_hz, Complex z_load) {
  CalibrationSet cal;
  cal.f_sig_hz = f_hz;
  cal.z_load = z_load;
  if (ppc) cal.r_open = forward_ratio(iip, *ppc, rip, term);
  cal.r_short = simulate_ratio(Complex{0.0}, iip, rip, term, ppc);
  cal.r_load = simulate_ratio(z_load, iip, rip, term, ppc);
  return cal;
}

TwoPortAbcd synthesize_probe_abcd(const ProbeParams& p, double f_hz) {
  require_positive(p.turns_ratio, "turns ratio");
  require_positive(p.magnetizing_l, "magnetizing inductance");
  require_positive(p.leakage_l, "leakage inductance");
  require_positive(p.winding_r, "winding resistance");
  require_positive(f_hz, "frequency");
  const double w = kTwoPi * f_hz;
  const TwoPortAbcd transformer{Complex{p.turns_ratio}, Complex{0.0}, Complex{0.0},
                                Complex{1.0 / p.turns_ratio}};
  const TwoPortAbcd shunt{Complex{1.0}, Complex{0.0}, 1.0 / Complex{0.0, w * p.magnetizing_l},
                          Complex{1.0}};
  const TwoPortAbcd series = series_impedance_abcd(Complex{p.winding_r, w * p.leakage_l});
  return cascade(cascade(transformer, shunt), series);
}

void NoiseModel::validate() const {
  if (!(white_noise_rms >= 0.0) || !std::isfinite(white_noise_rms)) {
    throw Error(ErrorKind::InvalidArgument, "white noise rms must be >= 0");
  }
  for (const auto& t : interference_tones) {
    if (!(t.frequency_hz > 0.0) || !std::isfinite(t.amplitude) || !std::isfinite(t.phase_deg)) {
      throw Error(ErrorKind::InvalidArgument, "interference tone needs a positive frequency");
    }
  }
}

NoiseModel NoiseModel::defaults(double vfd_hz) {
  NoiseModel n;
  n.white_noise_rms = 0.01;
  for (double fundamental : {50.0, vfd_hz}) {
    for (int h = 1; h <= 6; ++h) {
      n.interference_tones.push_back({fundamental * h, 0.005, 0.0});
    }
  }
  return n;
}

double white_rms_for_snr(double snr_db) {
  // unit tone power 1/2
  return std::sqrt(0.5 / std::pow(10.0, snr_db / 10.0));
}

double GaussianSource::next() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  // 53-bit uniforms; u1 in (0, 1] keeps the log finite.
  constexpr double kScale = 0x1.0p-53;
  const double u1 = 1.0 - static_cast<double>(engine_() >> 11) * kScale;
  const double u2 = static_cast<double>(engine_() >> 11) * kScale;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  spare_ = radius * std::sin(kTwoPi * u2);
  return radius * std::cos(kTwoPi * u2);
}

std::pair<Waveform, Waveform> synthesize_waveforms(Complex ratio, double f_sig_hz,
                                                   const NoiseModel& noise,
                                                   double sample_rate_hz, double duration_s,
                                                   std::uint64_t seed) {
  require_finite(ratio, "ratio");
  require_positive(sample_rate_hz, "sample rate");
  require_positive(f_sig_hz, "f_sig");
  noise.validate();
  const double nyquist = 0.5 * sample_rate_hz;
  if (!(f_sig_hz < nyquist)) {
    std::ostringstream msg;
    msg << "f_sig " << f_sig_hz << " Hz violates Nyquist for " << sample_rate_hz << " S/s";
    throw Error(ErrorKind::Nyquist, msg.str());
  }
  for (const auto& t : noise.interference_tones) {
    if (!(t.frequency_hz < nyquist)) {
      throw Error(ErrorKind::Nyquist, "interference tone above Nyquist");
    }
  }
  if (!(duration_s * f_sig_hz >= 20.0)) {
    throw Error(ErrorKind::InvalidArgument, "duration must cover at least 20 periods of f_sig");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate_hz));
  if (n < Waveform::kMinLength) {
    throw Error(ErrorKind::InvalidArgument, "record shorter than 16 samples");
  }

  const auto& k = kernels::active();
  const double omega = kTwoPi * f_sig_hz / sample_rate_hz;
  GaussianSource gauss(seed);

  auto channel = [&](double amplitude, double phase) {
    Waveform w{sample_rate_hz, std::vector<double>(n, 0.0)};
    k.add_tone(w.samples, amplitude, omega, phase);
    for (const auto& t : noise.interference_tones) {
      k.add_tone(w.samples, amplitude * t.amplitude, kTwoPi * t.frequency_hz / sample_rate_hz,
                 t.phase_deg * std::numbers::pi / 180.0);
    }
    if (noise.white_noise_rms > 0.0) {
      const double sigma = amplitude * noise.white_noise_rms;
      for (double& s : w.samples) s += sigma * gauss.next();
    }
    return w;
  };

  Waveform w1 = channel(std::abs(ratio), std::arg(ratio));
  Waveform w2 = channel(1.0, 0.0);
  return {std::move(w1), std::move(w2)};
}

}  // namespace icz
