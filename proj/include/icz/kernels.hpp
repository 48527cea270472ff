#pragma once

// Data-parallel inner loops of the tone path. Each kernel has a scalar
// reference and optional SIMD variants; `active()` picks one at runtime.

#include <cstddef>
#include <span>

namespace icz::kernels {

enum class Isa { Scalar, Avx2 };

/// Sum x[n] cos(w n) and sum x[n] sin(w n), n counted from 0.
struct ToneSums {
  double cos_sum = 0.0;
  double sin_sum = 0.0;
};

using CorrelateFn = ToneSums (*)(std::span<const double> x, double omega);
/// out[n] += amplitude * cos(omega n + phase)
using AddToneFn = void (*)(std::span<double> out, double amplitude, double omega,
                           double phase);

struct KernelTable {
  Isa isa;
  CorrelateFn correlate;
  AddToneFn add_tone;
};

const char* isa_name(Isa isa) noexcept;

/// True if the variant was compiled in and the CPU can run it.
bool supported(Isa isa) noexcept;

/// Throws icz::Error(InvalidArgument) for an unsupported ISA.
const KernelTable& table_for(Isa isa);

/// Best supported table, unless ICZ_ISA=scalar is set or force() was called.
const KernelTable& active();

/// Pins the active table (tests, benchmarking). Not thread-safe against
/// concurrent callers of active().
void force(Isa isa);
void reset();

namespace scalar {
ToneSums correlate(std::span<const double> x, double omega);
void add_tone(std::span<double> out, double amplitude, double omega, double phase);
}  // namespace scalar

#if defined(ICZ_HAVE_AVX2)
namespace avx2 {
ToneSums correlate(std::span<const double> x, double omega);
void add_tone(std::span<double> out, double amplitude, double omega, double phase);
}  // namespace avx2
#endif

}  // namespace icz::kernels
