#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "icz/complex.hpp"

namespace icz {

/// Series/parallel composition tree of ideal R, L and C elements.
///
/// Text form (used in SUT files): `r(10)`, `l(1e-3)`, `c(1e-9)`,
/// `series(a, b, ...)`, `parallel(a, b, ...)`. Values are SI units.
class RlcNetwork {
 public:
  enum class Kind { Resistor, Inductor, Capacitor, Series, Parallel };

  static RlcNetwork resistor(double ohms);
  static RlcNetwork inductor(double henries);
  static RlcNetwork capacitor(double farads);
  static RlcNetwork series(std::vector<RlcNetwork> parts);
  static RlcNetwork parallel(std::vector<RlcNetwork> parts);

  static RlcNetwork parse(std::string_view text);

  Kind kind() const { return kind_; }
  double value() const { return value_; }
  const std::vector<RlcNetwork>& children() const { return children_; }
  bool is_leaf() const { return children_.empty(); }

  std::string to_string() const;

  friend bool operator==(const RlcNetwork&, const RlcNetwork&) = default;

 private:
  RlcNetwork(Kind kind, double value, std::vector<RlcNetwork> children);

  Kind kind_;
  double value_ = 0.0;
  std::vector<RlcNetwork> children_;
};

/// Throws Resonance when a parallel node's branches cancel.
Complex impedance_of_rlc(const RlcNetwork& net, double f_hz);

}  // namespace icz
