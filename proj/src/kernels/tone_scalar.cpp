#include <cmath>

#include "icz/kernels.hpp"

namespace icz::kernels::scalar {

ToneSums correlate(std::span<const double> x, double omega) {
  ToneSums sums;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double arg = omega * static_cast<double>(n);
    sums.cos_sum += x[n] * std::cos(arg);
    sums.sin_sum += x[n] * std::sin(arg);
  }
  return sums;
}

void add_tone(std::span<double> out, double amplitude, double omega, double phase) {
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] += amplitude * std::cos(omega * static_cast<double>(n) + phase);
  }
}

}  // namespace icz::kernels::scalar
