#include <atomic>
#include <cstdlib>
#include <string_view>

#include "icz/error.hpp"
#include "icz/kernels.hpp"

namespace icz::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::correlate, &scalar::add_tone};
#if defined(ICZ_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::correlate, &avx2::add_tone};
#endif

std::atomic<const KernelTable*> g_forced{nullptr};

const KernelTable& detect() {
  if (const char* env = std::getenv("ICZ_ISA"); env && std::string_view(env) == "scalar") {
    return kScalar;
  }
#if defined(ICZ_HAVE_AVX2)
  if (supported(Isa::Avx2)) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(ICZ_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Isa isa) {
  if (!supported(isa)) {
    throw Error(ErrorKind::InvalidArgument,
                std::string("kernel ISA not supported here: ") + isa_name(isa));
  }
#if defined(ICZ_HAVE_AVX2)
  if (isa == Isa::Avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() {
  if (const KernelTable* forced = g_forced.load(std::memory_order_acquire)) return *forced;
  static const KernelTable& detected = detect();
  return detected;
}

void force(Isa isa) { g_forced.store(&table_for(isa), std::memory_order_release); }

void reset() { g_forced.store(nullptr, std::memory_order_release); }

}  // namespace icz::kernels
