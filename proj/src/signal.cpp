#include "icz/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "icz/kernels.hpp"

namespace icz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSnrCapDb = 300.0;
constexpr int kProbeBins = 32;
constexpr int kFirstProbeOffset = 4;

void check_frequency(const Waveform& w, double f_hz) {
  if (!(f_hz > 0.0) || !(f_hz < 0.5 * w.sample_rate_hz)) {
    std::ostringstream msg;
    msg << "frequency " << f_hz << " Hz outside (0, " << 0.5 * w.sample_rate_hz << ") Hz";
    throw Error(ErrorKind::FrequencyOutOfRange, msg.str());
  }
}

std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / denom));
  }
  return w;
}

// sum_{n<len} exp(j theta n)
Complex dirichlet_sum(std::size_t len, double theta) {
  const double half = 0.5 * theta;
  const double s = std::sin(half);
  const double n = static_cast<double>(len);
  if (std::abs(s) < 1e-300) return Complex{n};
  return std::polar(std::sin(n * half) / s, half * (n - 1.0));
}

struct Fit {
  Complex phasor;
  double residual_power;  // mean squared residual, weighted
};

// Least-squares fit of p*cos + q*sin onto x (optionally weighted).
Fit fit_tone(std::span<const double> x, std::span<const double> weights, double omega) {
  const auto& k = kernels::active();
  kernels::ToneSums proj;
  Complex gram_rot;  // sum w exp(j 2 omega n)
  double weight_sum;
  double energy;

  if (weights.empty()) {
    proj = k.correlate(x, omega);
    gram_rot = dirichlet_sum(x.size(), 2.0 * omega);
    weight_sum = static_cast<double>(x.size());
    energy = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
  } else {
    std::vector<double> wx(x.size());
    std::transform(x.begin(), x.end(), weights.begin(), wx.begin(), std::multiplies<>{});
    proj = k.correlate(wx, omega);
    const auto g = k.correlate(weights, 2.0 * omega);
    gram_rot = {g.cos_sum, g.sin_sum};
    weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    energy = std::inner_product(wx.begin(), wx.end(), x.begin(), 0.0);
  }

  const double scc = 0.5 * (weight_sum + gram_rot.real());
  const double sss = 0.5 * (weight_sum - gram_rot.real());
  const double scs = 0.5 * gram_rot.imag();
  const double det = scc * sss - scs * scs;
  const double p = (sss * proj.cos_sum - scs * proj.sin_sum) / det;
  const double q = (scc * proj.sin_sum - scs * proj.cos_sum) / det;

  const double residual = energy - (p * proj.cos_sum + q * proj.sin_sum);
  return {Complex{p, -q}, std::max(residual, 0.0) / weight_sum};
}

}  // namespace

void Waveform::validate() const {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw Error(ErrorKind::InvalidArgument, "waveform sample rate must be positive");
  }
  if (samples.size() < kMinLength) {
    throw Error(ErrorKind::InvalidArgument, "waveform needs at least 16 samples");
  }
  for (double s : samples) {
    if (!std::isfinite(s)) throw Error(ErrorKind::InvalidArgument, "waveform sample is not finite");
  }
}

AnalysisWindow plan_window(std::size_t n_samples, double sample_rate_hz, double f_hz) {
  const double samples_per_period = sample_rate_hz / f_hz;
  const double periods = std::floor(static_cast<double>(n_samples) / samples_per_period);
  if (periods < 5.0) return {n_samples, true};
  const auto len = static_cast<std::size_t>(std::llround(periods * samples_per_period));
  return {std::min(len, n_samples), false};
}

ToneEstimate goertzel_single_bin(const Waveform& w, double f_hz) {
  w.validate();
  check_frequency(w, f_hz);
  const AnalysisWindow win = plan_window(w.samples.size(), w.sample_rate_hz, f_hz);
  const double omega = kTwoPi * f_hz / w.sample_rate_hz;
  const std::span<const double> x(w.samples.data(), win.length);

  const std::vector<double> weights = win.hann ? hann(win.length) : std::vector<double>{};
  const Fit fit = fit_tone(x, weights, omega);

  const double tone_power = 0.5 * std::norm(fit.phasor);
  double snr_db = kSnrCapDb;
  if (fit.residual_power > 0.0) {
    snr_db = std::min(kSnrCapDb, 10.0 * std::log10(tone_power / fit.residual_power));
  }
  if (tone_power == 0.0) snr_db = -kSnrCapDb;
  return {f_hz, fit.phasor, snr_db};
}

Complex goertzel_dft(std::span<const double> x, double omega) {
  const double coeff = 2.0 * std::cos(omega);
  double s1 = 0.0;
  double s2 = 0.0;
  for (double v : x) {
    const double s0 = v + coeff * s1 - s2;
    s2 = s1;
    s1 = s0;
  }
  // y[N-1] = s[N-1] - exp(-j omega) s[N-2]; X = exp(-j omega (N-1)) y[N-1]
  const Complex y = Complex{s1} - std::polar(1.0, -omega) * s2;
  return y * std::polar(1.0, -omega * static_cast<double>(x.size() - 1));
}

double noise_floor(const Waveform& w, double f_hz) {
  w.validate();
  check_frequency(w, f_hz);
  const AnalysisWindow win = plan_window(w.samples.size(), w.sample_rate_hz, f_hz);
  const std::span<const double> x(w.samples.data(), win.length);
  const double nyquist = 0.5 * w.sample_rate_hz;
  const double spacing = w.sample_rate_hz / static_cast<double>(win.length);

  std::vector<double> tapered;
  double gain = static_cast<double>(win.length);
  std::span<const double> data = x;
  if (win.hann) {
    const auto weights = hann(win.length);
    tapered.resize(win.length);
    std::transform(x.begin(), x.end(), weights.begin(), tapered.begin(), std::multiplies<>{});
    gain = std::accumulate(weights.begin(), weights.end(), 0.0);
    data = tapered;
  }

  const auto& k = kernels::active();
  std::vector<double> amplitudes;
  amplitudes.reserve(kProbeBins);
  const int max_offset = static_cast<int>(win.length / 2);
  for (int offset = kFirstProbeOffset;
       offset <= max_offset && static_cast<int>(amplitudes.size()) < kProbeBins; ++offset) {
    for (int sign : {-1, 1}) {
      if (static_cast<int>(amplitudes.size()) >= kProbeBins) break;
      const double probe = f_hz + sign * offset * spacing;
      if (!(probe > 0.0) || !(probe < nyquist)) continue;
      const auto sums = k.correlate(data, kTwoPi * probe / w.sample_rate_hz);
      amplitudes.push_back(2.0 * std::hypot(sums.cos_sum, sums.sin_sum) / gain);
    }
  }
  if (amplitudes.empty()) return 0.0;

  const std::size_t mid = amplitudes.size() / 2;
  std::nth_element(amplitudes.begin(), amplitudes.begin() + mid, amplitudes.end());
  if (amplitudes.size() % 2 == 1) return amplitudes[mid];
  const double upper = amplitudes[mid];
  const double lower = *std::max_element(amplitudes.begin(), amplitudes.begin() + mid);
  return 0.5 * (lower + upper);
}

Complex complex_ratio(const Waveform& w1, const Waveform& w2, double f_hz) {
  if (w1.sample_rate_hz != w2.sample_rate_hz || w1.samples.size() != w2.samples.size()) {
    throw Error(ErrorKind::InvalidArgument, "channel records differ in sample rate or length");
  }
  const ToneEstimate t1 = goertzel_single_bin(w1, f_hz);
  const ToneEstimate t2 = goertzel_single_bin(w2, f_hz);
  const double floor2 = noise_floor(w2, f_hz);
  if (!(std::abs(t2.phasor) > 10.0 * floor2)) {
    std::ostringstream msg;
    msg << "channel 2 tone at " << f_hz << " Hz (" << std::abs(t2.phasor)
        << " V) is not above 10x its noise floor (" << floor2 << " V)";
    throw Error(ErrorKind::DeadChannel, msg.str());
  }
  return t1.phasor / t2.phasor;
}

double scan_injection_frequency(const Waveform& background, std::span<const double> candidates) {
  if (candidates.empty()) {
    throw Error(ErrorKind::EmptyCandidates, "no candidate injection frequencies");
  }
  std::vector<double> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());

  double best = sorted.front();
  double best_power = std::norm(goertzel_single_bin(background, best).phasor);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double power = std::norm(goertzel_single_bin(background, sorted[i]).phasor);
    if (power < best_power) {
      best = sorted[i];
      best_power = power;
    }
  }
  return best;
}

}  // namespace icz
