// AVX2/FMA variants. Four lanes carry cos/sin of consecutive samples and are
// advanced by a rotation of 4*omega; the phasors are re-seeded from libm every
// kReseed samples so rotation drift stays at a few ulp.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "icz/kernels.hpp"

namespace icz::kernels::avx2 {

namespace {

constexpr std::size_t kReseed = 256;

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

struct Rotor {
  __m256d c;
  __m256d s;
};

inline Rotor seed(std::size_t start, double omega, double phase) {
  alignas(32) double c[4];
  alignas(32) double s[4];
  for (int l = 0; l < 4; ++l) {
    const double arg = omega * static_cast<double>(start + l) + phase;
    c[l] = std::cos(arg);
    s[l] = std::sin(arg);
  }
  return {_mm256_load_pd(c), _mm256_load_pd(s)};
}

inline void advance(Rotor& r, __m256d rc, __m256d rs) {
  const __m256d c = _mm256_fmsub_pd(r.c, rc, _mm256_mul_pd(r.s, rs));
  r.s = _mm256_fmadd_pd(r.s, rc, _mm256_mul_pd(r.c, rs));
  r.c = c;
}

}  // namespace

ToneSums correlate(std::span<const double> x, double omega) {
  const std::size_t n = x.size();
  const std::size_t vec_end = n & ~std::size_t{3};
  const __m256d rc = _mm256_set1_pd(std::cos(4.0 * omega));
  const __m256d rs = _mm256_set1_pd(std::sin(4.0 * omega));
  __m256d acc_c = _mm256_setzero_pd();
  __m256d acc_s = _mm256_setzero_pd();

  std::size_t i = 0;
  while (i < vec_end) {
    const std::size_t block_end = std::min(vec_end, i + kReseed);
    Rotor r = seed(i, omega, 0.0);
    for (; i < block_end; i += 4) {
      const __m256d v = _mm256_loadu_pd(x.data() + i);
      acc_c = _mm256_fmadd_pd(v, r.c, acc_c);
      acc_s = _mm256_fmadd_pd(v, r.s, acc_s);
      advance(r, rc, rs);
    }
  }

  ToneSums sums{hsum(acc_c), hsum(acc_s)};
  for (; i < n; ++i) {
    const double arg = omega * static_cast<double>(i);
    sums.cos_sum += x[i] * std::cos(arg);
    sums.sin_sum += x[i] * std::sin(arg);
  }
  return sums;
}

void add_tone(std::span<double> out, double amplitude, double omega, double phase) {
  const std::size_t n = out.size();
  const std::size_t vec_end = n & ~std::size_t{3};
  const __m256d rc = _mm256_set1_pd(std::cos(4.0 * omega));
  const __m256d rs = _mm256_set1_pd(std::sin(4.0 * omega));
  const __m256d amp = _mm256_set1_pd(amplitude);

  std::size_t i = 0;
  while (i < vec_end) {
    const std::size_t block_end = std::min(vec_end, i + kReseed);
    Rotor r = seed(i, omega, phase);
    for (; i < block_end; i += 4) {
      double* p = out.data() + i;
      _mm256_storeu_pd(p, _mm256_fmadd_pd(amp, r.c, _mm256_loadu_pd(p)));
      advance(r, rc, rs);
    }
  }
  for (; i < n; ++i) {
    out[i] += amplitude * std::cos(omega * static_cast<double>(i) + phase);
  }
}

}  // namespace icz::kernels::avx2
