#pragma once

#include "icz/complex.hpp"

namespace icz {

/// ABCD transmission matrix: [V1; I1] = [[a, b], [c, d]] [V2; I2].
/// a and d are dimensionless, b is in ohms, c in siemens.
struct TwoPortAbcd {
  Complex a{1.0};
  Complex b{0.0};
  Complex c{0.0};
  Complex d{1.0};

  static TwoPortAbcd identity() { return {}; }

  Complex determinant() const { return a * d - b * c; }

  /// Throws InvalidArgument if any entry is NaN or infinite.
  void validate() const;
};

/// Channel terminations seen by the probes. Only z_c2 enters the extraction.
struct TerminationConfig {
  Complex z_c1{1.0e6};
  Complex z_c2{50.0};

  void validate() const;
};

/// Standard matrix product m1 * m2 (m1 nearer the source).
TwoPortAbcd cascade(const TwoPortAbcd& m1, const TwoPortAbcd& m2);

/// [[1, z], [0, 1]]
TwoPortAbcd series_impedance_abcd(Complex z);

/// V1/V2 for the chain IIP * series(z_total) * RIP loaded by term.z_c2.
Complex forward_ratio(const TwoPortAbcd& iip, Complex z_total,
                      const TwoPortAbcd& rip, const TerminationConfig& term);

/// Inverse of forward_ratio: recovers the series impedance from a measured
/// V1/V2 and characterised probes, without any PPC correction.
Complex extract_impedance_direct(Complex ratio, const TwoPortAbcd& iip,
                                 const TwoPortAbcd& rip,
                                 const TerminationConfig& term);

namespace detail {

inline constexpr double kSingularA = 1e-12;
inline constexpr double kSingularGamma = 1e-15;

/// RIP output-column terms with the termination folded in.
struct LoadedRip {
  Complex alpha;  // A_RIP + B_RIP / z_c2
  Complex gamma;  // C_RIP + D_RIP / z_c2
};

LoadedRip load_rip(const TwoPortAbcd& rip, const TerminationConfig& term);

}  // namespace detail

}  // namespace icz
