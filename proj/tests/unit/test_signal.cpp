#include <doctest.h>

#include "icz/signal.hpp"
#include "icz/simulator.hpp"
#include "oracles.hpp"

using namespace icz;
using icz::testing::rel_err;
using icz::testing::Rng;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Waveform tone(double fs, std::size_t n, double f, double amp, double phase_deg) {
  Waveform w{fs, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    w.samples[i] = amp * std::cos(kTwoPi * f * static_cast<double>(i) / fs + phase_deg * std::numbers::pi / 180.0);
  }
  return w;
}

void add_white(Waveform& w, double sigma, std::uint64_t seed) {
  GaussianSource g(seed);
  for (double& s : w.samples) s += sigma * g.next();
}

}  // namespace

TEST_CASE("pure tone gives its amplitude and phase") {
  // 91.3 kHz at 1 MS/s: not an integer number of samples per period.
  const auto w = tone(1e6, 5000, 91.3e3, 1.0, 0.0);
  const auto est = goertzel_single_bin(w, 91.3e3);
  CHECK(std::abs(est.phasor - Complex{1.0}) < 1e-6);
  CHECK(est.frequency_hz == 91.3e3);
  CHECK(est.snr_db > 120.0);

  const auto shifted = goertzel_single_bin(tone(1e6, 5000, 91.3e3, 0.37, -123.0), 91.3e3);
  CHECK(std::abs(shifted.phasor - from_polar_deg(0.37, -123.0)) < 1e-6);
}

TEST_CASE("tone at 2f is invisible at f on an integer-period window") {
  const auto w = tone(1e6, 4321, 2e4, 1.0, 17.0);
  CHECK(std::abs(goertzel_single_bin(w, 1e4).phasor) < 1e-6);
}

TEST_CASE("window plan") {
  CHECK(plan_window(1000, 1000.0, 50.0).length == 1000);
  CHECK_FALSE(plan_window(1000, 1000.0, 50.0).hann);
  CHECK(plan_window(1000, 1000.0, 51.0).length == 980);  // 50 periods of 19.6 samples
  CHECK(plan_window(1000, 1000.0, 4.0).hann);
}

TEST_CASE("phasor equals the full-length DFT bin for multi-tone input with noise") {
  Rng rng(31);
  const double fs = 1000.0;
  const std::size_t n = 1000;
  Waveform w = tone(fs, n, 50.0, 0.8, 40.0);
  for (double f : {13.0, 120.0, 260.0}) {
    const auto extra = tone(fs, n, f, rng.uniform(0.1, 2.0), rng.uniform(-180, 180));
    for (std::size_t i = 0; i < n; ++i) w.samples[i] += extra.samples[i];
  }
  add_white(w, 0.3, 77);
  const Complex dft = icz::testing::naive_dft(w.samples, kTwoPi * 50.0 / fs);
  const Complex expected = 2.0 * dft / static_cast<double>(n);
  CHECK(rel_err(goertzel_single_bin(w, 50.0).phasor, expected) < 1e-9);
}

TEST_CASE("Hann fallback for short records stays within the scalloping bound") {
  // 3.7 periods of f in the record.
  const auto w = tone(1e4, 400, 92.5, 1.3, 25.0);
  REQUIRE(plan_window(400, 1e4, 92.5).hann);
  const auto est = goertzel_single_bin(w, 92.5);
  CHECK(std::abs(std::abs(est.phasor) / 1.3 - 1.0) < 2e-3);
  CHECK(std::abs(angle_deg(est.phasor) - 25.0) < 0.2);
}

TEST_CASE("phasor is linear in the waveform") {
  Rng rng(32);
  Waveform w = tone(2.5e6, 5000, 91.3e3, 1.0, 10.0);
  add_white(w, 0.05, 5);
  const Complex base = goertzel_single_bin(w, 91.3e3).phasor;
  for (double alpha : {-3.0, 0.25, 1e4}) {
    Waveform scaled = w;
    for (double& s : scaled.samples) s *= alpha;
    CHECK(rel_err(goertzel_single_bin(scaled, 91.3e3).phasor, alpha * base) < 1e-12);
  }
}

TEST_CASE("SNR estimate follows the white-noise level") {
  Waveform w = tone(2.5e6, 20000, 91.3e3, 1.0, 0.0);
  const double sigma = white_rms_for_snr(40.0);
  add_white(w, sigma, 9);
  CHECK(goertzel_single_bin(w, 91.3e3).snr_db == doctest::Approx(40.0).epsilon(0.0125));
}

TEST_CASE("noise floor tracks the white-noise amplitude density") {
  Waveform w = tone(1e6, 20000, 1e5, 1.0, 0.0);
  const double sigma = 0.1;
  add_white(w, sigma, 10);
  // Bin amplitude is Rayleigh with scale sigma*sqrt(2/N); median = scale*sqrt(2 ln 2).
  const double expected = sigma * std::sqrt(2.0 / 20000.0) * std::sqrt(2.0 * std::log(2.0));
  CHECK(noise_floor(w, 1e5) == doctest::Approx(expected).epsilon(0.3));
}

TEST_CASE("complex ratio") {
  const auto w1 = tone(2.5e6, 5000, 91.3e3, 1.0, 0.0);
  SUBCASE("identical channels") {
    CHECK(std::abs(complex_ratio(w1, w1, 91.3e3) - Complex{1.0}) < 1e-12);
  }
  SUBCASE("amplitude and phase difference") {
    const auto w2 = tone(2.5e6, 5000, 91.3e3, 0.5, -30.0);
    const Complex r = complex_ratio(w1, w2, 91.3e3);
    CHECK(std::abs(std::abs(r) / 2.0 - 1.0) < 1e-3);
    CHECK(std::abs(angle_deg(r) - 30.0) < 0.1);
  }
  SUBCASE("invariant under common scaling") {
    Waveform a = tone(2.5e6, 5000, 91.3e3, 1.7, 12.0);
    Waveform b = tone(2.5e6, 5000, 91.3e3, 0.3, -70.0);
    add_white(a, 0.01, 1);
    add_white(b, 0.01, 2);
    const Complex r = complex_ratio(a, b, 91.3e3);
    for (double& s : a.samples) s *= -42.0;
    for (double& s : b.samples) s *= -42.0;
    CHECK(rel_err(complex_ratio(a, b, 91.3e3), r) < 1e-12);
  }
  SUBCASE("dead second channel") {
    Waveform silent{2.5e6, std::vector<double>(5000, 0.0)};
    Waveform noisy = silent;
    add_white(noisy, 0.1, 3);
    for (const Waveform* w2 : {&silent, &noisy}) {
      try {
        complex_ratio(w1, *w2, 91.3e3);
        FAIL("expected dead-channel error");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DeadChannel);
      }
    }
  }
  SUBCASE("mismatched records") {
    const auto shorter = tone(2.5e6, 4000, 91.3e3, 1.0, 0.0);
    CHECK_THROWS_AS(complex_ratio(w1, shorter, 91.3e3), Error);
  }
}

TEST_CASE("40 dB SNR ratio accuracy over 100 trials") {
  const Complex truth = from_polar_deg(3.2, -48.0);
  NoiseModel noise;
  noise.white_noise_rms = white_rms_for_snr(40.0);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto [w1, w2] = synthesize_waveforms(truth, 91.3e3, noise, 2.5e6, 2e-3, seed);
    const Complex r = complex_ratio(w1, w2, 91.3e3);
    CHECK(std::abs(std::abs(r) / std::abs(truth) - 1.0) < 5e-3);
    CHECK(std::abs(angle_deg(r / truth)) < 0.5);
  }
}

TEST_CASE("frequency range checks") {
  const auto w = tone(1e4, 1000, 100.0, 1.0, 0.0);
  for (double f : {0.0, -5.0, 5000.0, 6000.0}) {
    try {
      goertzel_single_bin(w, f);
      FAIL("expected out-of-range error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::FrequencyOutOfRange);
    }
  }
  Waveform tiny{1e4, std::vector<double>(8, 0.0)};
  CHECK_THROWS_AS(goertzel_single_bin(tiny, 100.0), Error);
}

TEST_CASE("injection frequency scan") {
  const double fs = 500e3;
  const std::size_t n = 50000;  // 0.1 s: five mains periods
  SUBCASE("mains background favours 91.3 kHz") {
    Waveform bg = tone(fs, n, 50.0, 10.0, 0.0);
    for (int h = 2; h <= 7; ++h) {
      const auto harmonic = tone(fs, n, 50.0 * h, 10.0 / h, 30.0 * h);
      for (std::size_t i = 0; i < n; ++i) bg.samples[i] += harmonic.samples[i];
    }
    add_white(bg, 0.01, 4);
    const std::vector<double> candidates{50.0, 91.3e3};
    CHECK(scan_injection_frequency(bg, candidates) == 91.3e3);
  }
  SUBCASE("silent background picks the lowest candidate") {
    Waveform bg{fs, std::vector<double>(n, 0.0)};
    const std::vector<double> candidates{120e3, 91.3e3, 60e3};
    CHECK(scan_injection_frequency(bg, candidates) == 60e3);
  }
  SUBCASE("the one clean candidate wins") {
    const std::vector<double> candidates{20e3, 45e3, 91.3e3, 150e3};
    for (std::size_t clean = 0; clean < candidates.size(); ++clean) {
      Waveform bg{fs, std::vector<double>(n, 0.0)};
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (i == clean) continue;
        const auto t = tone(fs, n, candidates[i], 0.2 + 0.1 * i, 0.0);
        for (std::size_t s = 0; s < n; ++s) bg.samples[s] += t.samples[s];
      }
      add_white(bg, 1e-3, 100 + clean);
      CHECK(scan_injection_frequency(bg, candidates) == candidates[clean]);
    }
  }
  SUBCASE("empty candidate list") {
    Waveform bg{fs, std::vector<double>(n, 0.0)};
    try {
      scan_injection_frequency(bg, {});
      FAIL("expected empty-candidate error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyCandidates);
    }
  }
}
