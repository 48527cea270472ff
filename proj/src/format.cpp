#include "icz/format.hpp"

#include <charconv>
#include <cmath>

#include "icz/error.hpp"

namespace icz {

std::string format_double(double v) {
  // Plain digits for everyday magnitudes, exponent form outside them.
  char buf[64];
  const double a = std::abs(v);
  const bool plain = a == 0.0 || (a >= 1e-4 && a < 1e15);
  const auto res = plain ? std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed)
                         : std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size() ||
      !std::isfinite(v)) {
    throw Error(ErrorKind::Parse,
                std::string(what) + ": '" + std::string(text) + "' is not a finite number");
  }
  return v;
}

}  // namespace icz
