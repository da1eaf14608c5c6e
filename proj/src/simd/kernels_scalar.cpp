// Scalar reference backend. Compiled with -ffp-contract=off so the
// mul/add sequence matches the vector backends instruction for instruction.

#include <cmath>

#include "lwnb/simd/kernels.hpp"

namespace lwnb::simd {

namespace {

inline double term(const double* a, const double* b, const double* penalty,
                   std::size_t i) {
  if (std::isnan(a[i]) || std::isnan(b[i])) return penalty[i];
  double d = a[i] - b[i];
  return d * d;
}

}  // namespace

double masked_sqdist_scalar(const double* a, const double* b,
                            const double* penalty, std::size_t n) {
  double acc0 = 0.0, acc1 = 0.0, acc2 = 0.0, acc3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 += term(a, b, penalty, i);
    acc1 += term(a, b, penalty, i + 1);
    acc2 += term(a, b, penalty, i + 2);
    acc3 += term(a, b, penalty, i + 3);
  }
  double sum = (acc0 + acc2) + (acc1 + acc3);
  for (; i < n; ++i) sum += term(a, b, penalty, i);
  return sum;
}

}  // namespace lwnb::simd
