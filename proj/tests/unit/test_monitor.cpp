#include <doctest.h>

#include <vector>

#include "icz/io.hpp"
#include "icz/monitor.hpp"
#include "oracles.hpp"

using namespace icz;

namespace {

const BaselineRecord kBaseline{from_polar_deg(6750.0, -67.9), 91.3e3, "healthy", ""};

std::vector<SeriesEntry> fixture_series() {
  const auto doc = load_document(std::string(ICZ_FIXTURE_DIR) + "/field_series.session");
  std::vector<SeriesEntry> out;
  for (const Section* s : doc.find_all("measurement")) out.push_back(measurement_from(*s));
  return out;
}

}  // namespace

TEST_CASE("relative change of the reference measurements") {
  struct Row {
    double magnitude;
    double expected;
  };
  // magnitudes only; the classifier ignores phase
  const Row rows[] = {{6748.51, 0.022}, {6748.6, 0.021}, {6758.38, 0.124}, {6750.22, 0.003},
                      {6706.3, 0.651},  {6720.09, 0.443}, {6833.72, 1.240}, {7036.0, 4.237}};
  for (const auto& r : rows) {
    CAPTURE(r.magnitude);
    const double pct = relative_change(kBaseline.impedance, from_polar_deg(r.magnitude, -60.0));
    CHECK(std::abs(pct - r.expected) <= 0.01);
  }
}

TEST_CASE("relative change ignores phase and overall scale") {
  icz::testing::Rng rng(61);
  for (int i = 0; i < 500; ++i) {
    const Complex zb = rng.complex_in(1.0, 1e6);
    const Complex zm = rng.complex_in(1.0, 1e6);
    const double base = relative_change(zb, zm);
    const Complex rot = std::polar(1.0, rng.uniform(-3.0, 3.0));
    CHECK(relative_change(zb * rot, zm * std::conj(rot)) == doctest::Approx(base).epsilon(1e-12));
    const double k = rng.log_uniform(1e-3, 1e3);
    CHECK(relative_change(zb * k, zm * k) == doctest::Approx(base).epsilon(1e-12));
    CHECK(complex_relative_change(zb, zm) >= base * (1.0 - 1e-12));
  }
  CHECK(relative_change(Complex{3.0, 4.0}, Complex{0.0, -5.0}) == 0.0);
  CHECK(complex_relative_change(Complex{3.0, 4.0}, Complex{3.0, -4.0}) == doctest::Approx(160.0));
}

TEST_CASE("classification threshold") {
  CHECK(classify(kBaseline, from_polar_deg(6750.0 * 1.0249, 0.0)).classification ==
        Classification::Healthy);
  CHECK(classify(kBaseline, from_polar_deg(6750.0 * 1.0251, 0.0)).classification ==
        Classification::StatorFaultSuspected);
  CHECK(classify(kBaseline, from_polar_deg(6750.0 * 0.97, 0.0)).classification ==
        Classification::StatorFaultSuspected);
  CHECK(classify(kBaseline, from_polar_deg(7036.0, -64.6), 5.0).classification ==
        Classification::Healthy);

  const auto v = classify(kBaseline, from_polar_deg(7036.0, -64.606));
  CHECK(v.threshold_pct == kDefaultThresholdPct);
  CHECK(v.relative_change_pct == doctest::Approx(4.23704).epsilon(1e-5));
  CHECK(v.complex_change_pct > v.relative_change_pct);
  CHECK(std::string(to_string(v.classification)) == "STATOR_FAULT_SUSPECTED");
  CHECK(std::string(to_string(Classification::Healthy)) == "HEALTHY");
}

TEST_CASE("classification rejects bad inputs") {
  auto zero = kBaseline;
  zero.impedance = 0.0;
  try {
    classify(zero, Complex{1.0});
    FAIL("expected zero-baseline error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroBaseline);
  }
  CHECK_THROWS_AS(classify(kBaseline, Complex{1.0}, 0.0), Error);
  CHECK_THROWS_AS(classify(kBaseline, Complex{1.0}, -1.0), Error);
  CHECK_THROWS_AS(classify(kBaseline, Complex{std::nan(""), 0.0}), Error);
}

TEST_CASE("sweep over the field series flags only the stator fault") {
  const auto series = fixture_series();
  REQUIRE(series.size() == 9);
  const auto verdicts = sweep_report(kBaseline, series);
  REQUIRE(verdicts.size() == series.size());
  int faults = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (verdicts[i].classification == Classification::StatorFaultSuspected) {
      ++faults;
      CHECK(series[i].label == "stator-turn-fault");
    }
  }
  CHECK(faults == 1);
  CHECK(series[5].point.load_label == std::optional<std::string>("Half load"));
  CHECK(series[0].point.rpm == std::optional<double>(1159.0));
}

TEST_CASE("sweep errors name the failing entry") {
  std::vector<SeriesEntry> series(3);
  series[0].measured = Complex{6750.0};
  series[1].measured = Complex{6700.0};
  series[2].measured = Complex{6700.0};
  series[2].point.rpm = -5.0;
  try {
    sweep_report(kBaseline, series);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("entry 2") != std::string::npos);
  }
  CHECK_THROWS_AS(sweep_report(kBaseline, std::span<const SeriesEntry>{}), Error);

  std::vector<SeriesEntry> flat(4);
  for (auto& e : flat) e.measured = kBaseline.impedance;
  for (const auto& v : sweep_report(kBaseline, flat)) {
    CHECK(v.relative_change_pct == 0.0);
    CHECK(v.classification == Classification::Healthy);
  }
}
