#include <doctest.h>

#include "icz/calibration.hpp"
#include "icz/simulator.hpp"
#include "oracles.hpp"

using namespace icz;
using icz::testing::rel_err;
using icz::testing::Rng;

namespace {

// Jig ratios produced by a known (k, b, z_ppc) through the PPC-aware linear
// model: k*ratio + b = z || z_ppc.
CalibrationSet jig_from_coefficients(Complex k, Complex b, Complex z_ppc, Complex z_load = 50.0) {
  auto ratio_for = [&](Complex z_eff) { return (z_eff - b) / k; };
  CalibrationSet cal;
  cal.f_sig_hz = 91.3e3;
  cal.z_load = z_load;
  cal.r_open = ratio_for(z_ppc);
  cal.r_short = ratio_for(0.0);
  cal.r_load = ratio_for(parallel(z_load, z_ppc));
  return cal;
}

}  // namespace

TEST_CASE("solve_osl recovers the coefficients that generated the jig data") {
  const Complex k{0.8, -2.5};
  const Complex b{-13.0, 4.0};
  const Complex z_ppc{5000.0, 0.0};
  const auto cal = jig_from_coefficients(k, b, z_ppc);
  const auto coeffs = solve_osl(cal);
  REQUIRE(coeffs.z_ppc.has_value());
  CHECK(rel_err(*coeffs.z_ppc, z_ppc) < 1e-9);
  CHECK(rel_err(coeffs.k, k) < 1e-9);
  CHECK(rel_err(coeffs.b, b) < 1e-9);
}

TEST_CASE("short measurement maps to zero through k and b") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto cal = jig_from_coefficients(rng.complex_in(0.1, 100.0), rng.complex_in(0.1, 1e3),
                                           rng.complex_in(1e3, 1e7));
    const auto c = solve_osl(cal);
    CHECK(std::abs(c.k * cal.r_short + c.b) <= 1e-9 * std::abs(c.b));
  }
}

TEST_CASE("solve_osl agrees with a Newton solve of the three jig equations") {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto cal = jig_from_coefficients(rng.complex_in(0.1, 100.0), rng.complex_in(0.1, 1e3),
                                           rng.complex_in(1e3, 1e7), rng.complex_in(10.0, 100.0, -10, 10));
    const auto ref = icz::testing::newton_osl(*cal.r_open, cal.r_short, cal.r_load, cal.z_load);
    REQUIRE(ref.converged);
    const auto got = solve_osl(cal);
    CHECK(rel_err(got.k, ref.k) < 1e-9);
    CHECK(rel_err(got.b, ref.b) < 1e-9);
    CHECK(rel_err(*got.z_ppc, ref.z_ppc) < 1e-9);
  }
}

TEST_CASE("self-calibration fixed points") {
  const auto cal = jig_from_coefficients({1.5, 0.5}, {-40.0, 3.0}, {2e5, -1e4});
  CHECK(std::abs(extract_impedance_osl(cal.r_short, cal)) < 1e-9);
  CHECK(rel_err(extract_impedance_osl(cal.r_load, cal), Complex{50.0}) < 1e-12);
  CHECK(std::abs(extract_impedance_two_point(cal.r_short, cal)) < 1e-9);
  CHECK(rel_err(extract_impedance_two_point(cal.r_load, cal), Complex{50.0}) < 1e-12);
}

TEST_CASE("OSL extraction equals de-parallelised k*ratio + b") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto cal = jig_from_coefficients(rng.complex_in(0.1, 100.0), rng.complex_in(0.1, 1e3),
                                           rng.complex_in(1e3, 1e7));
    const Complex ratio = rng.complex_in(0.01, 1e4);
    const Complex direct = extract_impedance_osl(ratio, cal);
    const Complex via = extract_with_coefficients(ratio, solve_osl(cal));
    CHECK(rel_err(via, direct) < 1e-9);
  }
}

TEST_CASE("OSL recovers the healthy motor impedance through random probes") {
  Rng rng(14);
  const Complex z = from_polar_deg(6750.0, -67.9);
  const TerminationConfig term;
  for (int i = 0; i < 100; ++i) {
    const auto iip = rng.reciprocal_probe();
    const auto rip = rng.reciprocal_probe();
    const Complex z_ppc = 1e6;
    const auto cal = simulate_calibration(iip, rip, term, z_ppc, 91.3e3);
    const Complex ratio = simulate_ratio(z, iip, rip, term, z_ppc);
    CHECK(rel_err(extract_impedance_osl(ratio, cal), z) < 1e-6);
  }
}

TEST_CASE("two-point converges to OSL when PPC is negligible") {
  Rng rng(15);
  const TerminationConfig term;
  for (int i = 0; i < 200; ++i) {
    const auto iip = rng.reciprocal_probe();
    const auto rip = rng.reciprocal_probe();
    const Complex z = rng.complex_in(1.0, 1e4, -90, 90);
    const Complex z_ppc = rng.polar_deg(1e6 * std::abs(z) * rng.uniform(1.0, 10.0), rng.uniform(-90, 90));
    const auto cal = simulate_calibration(iip, rip, term, z_ppc, 91.3e3);
    const Complex ratio = simulate_ratio(z, iip, rip, term, z_ppc);
    const Complex osl = extract_impedance_osl(ratio, cal);
    const Complex two_point = extract_impedance_two_point(ratio, cal);
    CHECK(rel_err(two_point, osl) < 1e-4);
  }
}

TEST_CASE("ppc_error") {
  CHECK(ppc_error(0.0, 1e3) == Complex{0.0});
  CHECK(std::abs(ppc_error(6750.0, 1e18)) < 1e-14);
  CHECK(rel_err(ppc_error(100.0, 100.0), Complex{-0.5}) < 1e-15);

  Rng rng(16);
  for (int i = 0; i < 500; ++i) {
    // the direct expansion loses digits when zp dwarfs z or the two nearly cancel
    const Complex z = rng.complex_in(1e-2, 1e6);
    const Complex zp = z * rng.complex_in(1e-2, 1e2);
    if (std::abs(z + zp) < 0.1 * std::abs(z)) continue;
    CHECK(rel_err(ppc_error(z, zp), icz::testing::ppc_error_by_definition(z, zp)) < 1e-12);
  }

  try {
    ppc_error({100.0, 50.0}, {-100.0, -50.0});
    FAIL("expected resonance error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resonance);
  }
}

TEST_CASE("degenerate calibrations are rejected") {
  auto expect_degenerate = [](const CalibrationSet& cal) {
    try {
      cal.validate();
      FAIL("expected degenerate calibration");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateCalibration);
    }
  };
  CalibrationSet cal;
  cal.f_sig_hz = 1e5;
  cal.r_short = {1.0, 0.0};
  cal.r_load = {1.0, 1e-10};
  expect_degenerate(cal);

  cal.r_load = {2.0, 0.0};
  cal.r_open = Complex{2.0, 5e-10};
  expect_degenerate(cal);

  cal.r_open = Complex{1.0 + 1e-12, 0.0};
  expect_degenerate(cal);

  cal.r_open = Complex{3.0, 0.0};
  CHECK_NOTHROW(cal.validate());
  CHECK_THROWS_AS(solve_osl(CalibrationSet{1e5, std::nullopt, 1.0, 2.0, 50.0}), Error);

  CalibrationSet no_freq = cal;
  no_freq.f_sig_hz = 0.0;
  CHECK_THROWS_AS(no_freq.validate(), Error);
}

TEST_CASE("ratio indistinguishable from the open standard") {
  CalibrationSet cal{1e5, Complex{5.0, 1.0}, 1.0, 2.0, 50.0};
  try {
    extract_impedance_osl({5.0, 1.0}, cal);
    FAIL("expected open-indistinguishable error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OpenIndistinguishable);
  }
}

TEST_CASE("extract_impedance picks the method from the calibration contents") {
  CalibrationSet two{1e5, std::nullopt, 1.0, 2.0, 50.0};
  CHECK(rel_err(extract_impedance(3.0, two), Complex{100.0}) < 1e-15);
  CalibrationSet osl{1e5, Complex{1e6, 0.0}, 1.0, 2.0, 50.0};
  CHECK(rel_err(extract_impedance(3.0, osl), extract_impedance_osl(3.0, osl)) == 0.0);
}
