// AVX2 backend. This translation unit is the only one built with -mavx2;
// callers must route through the dispatcher. -ffp-contract=off keeps the
// compiler from fusing the mul/add pair, which would change rounding
// relative to the scalar reference.

#if defined(__x86_64__) || defined(_M_X64)

#include <cmath>
#include <immintrin.h>

#include "lwnb/simd/kernels.hpp"

namespace lwnb::simd {

namespace {

inline double tail_term(const double* a, const double* b,
                        const double* penalty, std::size_t i) {
  if (std::isnan(a[i]) || std::isnan(b[i])) return penalty[i];
  double d = a[i] - b[i];
  return d * d;
}

}  // namespace

double masked_sqdist_avx2(const double* a, const double* b,
                          const double* penalty, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    __m256d vp = _mm256_loadu_pd(penalty + i);
    __m256d diff = _mm256_sub_pd(va, vb);
    __m256d sq = _mm256_mul_pd(diff, diff);
    // NaN in either operand marks the dimension missing.
    __m256d mask = _mm256_or_pd(_mm256_cmp_pd(va, va, _CMP_UNORD_Q),
                                _mm256_cmp_pd(vb, vb, _CMP_UNORD_Q));
    acc = _mm256_add_pd(acc, _mm256_blendv_pd(sq, vp, mask));
  }
  // (acc0+acc2) + (acc1+acc3), matching the scalar reference.
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d pair = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; i < n; ++i) sum += tail_term(a, b, penalty, i);
  return sum;
}

}  // namespace lwnb::simd

#endif  // x86_64
