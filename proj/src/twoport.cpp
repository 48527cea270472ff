#include "icz/twoport.hpp"

#include <string>

namespace icz {

void TwoPortAbcd::validate() const {
  require_finite(a, "ABCD entry a");
  require_finite(b, "ABCD entry b");
  require_finite(c, "ABCD entry c");
  require_finite(d, "ABCD entry d");
}

void TerminationConfig::validate() const {
  require_finite(z_c1, "termination z_c1");
  require_finite(z_c2, "termination z_c2");
  if (std::abs(z_c2) == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "termination z_c2 must be non-zero");
  }
}

TwoPortAbcd cascade(const TwoPortAbcd& m1, const TwoPortAbcd& m2) {
  return {m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
          m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d};
}

TwoPortAbcd series_impedance_abcd(Complex z) {
  require_finite(z, "series impedance");
  return {Complex{1.0}, z, Complex{0.0}, Complex{1.0}};
}

namespace detail {

LoadedRip load_rip(const TwoPortAbcd& rip, const TerminationConfig& term) {
  term.validate();
  return {rip.a + rip.b / term.z_c2, rip.c + rip.d / term.z_c2};
}

}  // namespace detail

Complex forward_ratio(const TwoPortAbcd& iip, Complex z_total,
                      const TwoPortAbcd& rip, const TerminationConfig& term) {
  require_finite(z_total, "z_total");
  const auto [alpha, gamma] = detail::load_rip(rip, term);
  if (std::abs(gamma) < detail::kSingularGamma) {
    throw Error(ErrorKind::SingularProbe,
                "RIP output column annihilates the termination (gamma = 0)");
  }
  return iip.a * (alpha + z_total * gamma) + iip.b * gamma;
}

Complex extract_impedance_direct(Complex ratio, const TwoPortAbcd& iip,
                                 const TwoPortAbcd& rip,
                                 const TerminationConfig& term) {
  require_finite(ratio, "ratio");
  const auto [alpha, gamma] = detail::load_rip(rip, term);
  if (std::abs(iip.a) < detail::kSingularA) {
    throw Error(ErrorKind::SingularProbe, "IIP A entry is singular");
  }
  if (std::abs(gamma) < detail::kSingularGamma) {
    throw Error(ErrorKind::SingularProbe, "RIP gamma term is singular");
  }
  return ratio / (iip.a * gamma) - alpha / gamma - iip.b / iip.a;
}

}  // namespace icz
