#include <atomic>
#include <cstdlib>
#include <string>

#include "lwnb/simd/kernels.hpp"

namespace lwnb::simd {

namespace {

struct Backend {
  std::string_view name;
  SqDistFn fn;
};

bool avx2_usable() {
#if defined(__x86_64__) || defined(_M_X64)
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
#else
  return false;
#endif
}

const Backend* find_backend(std::string_view name) {
  static const Backend scalar{"scalar", &masked_sqdist_scalar};
#if defined(__x86_64__) || defined(_M_X64)
  static const Backend avx2{"avx2", &masked_sqdist_avx2};
  if (name == "avx2" && avx2_usable()) return &avx2;
#endif
  if (name == "scalar") return &scalar;
  return nullptr;
}

const Backend* default_backend() {
  if (const char* env = std::getenv("LWNB_SIMD")) {
    if (const Backend* b = find_backend(env)) return b;
  }
  if (const Backend* b = find_backend("avx2")) return b;
  return find_backend("scalar");
}

std::atomic<const Backend*>& current() {
  static std::atomic<const Backend*> backend{default_backend()};
  return backend;
}

}  // namespace

double masked_sqdist(const double* a, const double* b, const double* penalty,
                     std::size_t n) {
  return current().load(std::memory_order_relaxed)->fn(a, b, penalty, n);
}

void masked_sqdist_batch(const double* query, const double* rows,
                         std::size_t n_rows, std::size_t dims,
                         const double* penalty, double* out) {
  SqDistFn fn = current().load(std::memory_order_relaxed)->fn;
  for (std::size_t r = 0; r < n_rows; ++r)
    out[r] = fn(query, rows + r * dims, penalty, dims);
}

std::string_view active_backend() {
  return current().load(std::memory_order_relaxed)->name;
}

std::vector<std::string_view> available_backends() {
  std::vector<std::string_view> names{"scalar"};
  if (avx2_usable()) names.push_back("avx2");
  return names;
}

bool set_backend(std::string_view name) {
  const Backend* b = find_backend(name);
  if (!b) return false;
  current().store(b, std::memory_order_relaxed);
  return true;
}

}  // namespace lwnb::simd
