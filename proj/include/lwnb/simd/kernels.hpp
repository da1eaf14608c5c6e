#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace lwnb::simd {

/// Masked squared Euclidean distance. Per dimension d the contribution is
/// penalty[d] when either side is NaN (a missing value), else
/// (a[d]-b[d])^2.
///
/// All backends accumulate into four independent lanes over contiguous
/// 4-dimension chunks, reduce as (acc0+acc2)+(acc1+acc3) and add the tail
/// terms in order, so every backend returns bit-identical results.
using SqDistFn = double (*)(const double* a, const double* b,
                            const double* penalty, std::size_t n);

double masked_sqdist_scalar(const double* a, const double* b,
                            const double* penalty, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
double masked_sqdist_avx2(const double* a, const double* b,
                          const double* penalty, std::size_t n);
#endif

/// Dispatched entry point. The backend is chosen once: the LWNB_SIMD
/// environment variable ("scalar" or "avx2") wins, otherwise the widest
/// backend the CPU supports.
double masked_sqdist(const double* a, const double* b, const double* penalty,
                     std::size_t n);

/// Squared distances from one query against a row-major matrix.
void masked_sqdist_batch(const double* query, const double* rows,
                         std::size_t n_rows, std::size_t dims,
                         const double* penalty, double* out);

std::string_view active_backend();
std::vector<std::string_view> available_backends();
/// Forces a backend by name; returns false if it is not available here.
bool set_backend(std::string_view name);

}  // namespace lwnb::simd
