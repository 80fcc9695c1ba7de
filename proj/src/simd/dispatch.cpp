#include <atomic>
#include <cstdlib>
#include <string>

#include "ldrop/core/types.hpp"
#include "ldrop/simd/kernels.hpp"

namespace ldrop::simd {

namespace {

bool cpu_has_avx2() {
#if defined(LDROP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("LDROP_SIMD")) {
    if (std::string(env) == "scalar") return Backend::Scalar;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{initial_backend()};
  return b;
}

}  // namespace

bool backend_available(Backend b) { return b == Backend::Scalar || cpu_has_avx2(); }

Backend active_backend() { return current().load(); }

void set_backend(Backend b) {
  if (!backend_available(b)) throw ArgumentError("SIMD backend not available on this CPU");
  current().store(b);
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

#if defined(LDROP_HAVE_AVX2)
#define LDROP_DISPATCH(fn, ...) \
  (active_backend() == Backend::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define LDROP_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

std::complex<double> triple_product_sum(PhaseRow a, PhaseRow b, PhaseRow c, const double* w,
                                        std::size_t n) {
  return LDROP_DISPATCH(triple_product_sum, a, b, c, w, n);
}

void accumulate_phase_projection(PhaseRow a, PhaseRow b, PhaseRow c, std::complex<double> s,
                                 const double* w, const double coef[3], double* out_x,
                                 double* out_y, double* out_z, std::size_t n) {
  LDROP_DISPATCH(accumulate_phase_projection, a, b, c, s, w, coef, out_x, out_y, out_z, n);
}

double weighted_power_sum(const double* z, const double* w, std::size_t n) {
  return LDROP_DISPATCH(weighted_power_sum, z, w, n);
}

}  // namespace ldrop::simd
