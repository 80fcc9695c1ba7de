#include <immintrin.h>

#include "ldrop/simd/kernels.hpp"

namespace ldrop::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

// z = a * b * c for four particles at once
inline void triple(const PhaseRow& a, const PhaseRow& b, const PhaseRow& c, std::size_t j,
                   __m256d& zr, __m256d& zi) {
  const __m256d ar = _mm256_loadu_pd(a.re + j), ai = _mm256_loadu_pd(a.im + j);
  const __m256d br = _mm256_loadu_pd(b.re + j), bi = _mm256_loadu_pd(b.im + j);
  const __m256d cr = _mm256_loadu_pd(c.re + j), ci = _mm256_loadu_pd(c.im + j);
  const __m256d abr = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
  const __m256d abi = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
  zr = _mm256_fmsub_pd(abr, cr, _mm256_mul_pd(abi, ci));
  zi = _mm256_fmadd_pd(abr, ci, _mm256_mul_pd(abi, cr));
}

}  // namespace

std::complex<double> triple_product_sum(PhaseRow a, PhaseRow b, PhaseRow c, const double* w,
                                        std::size_t n) {
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d zr, zi;
    triple(a, b, c, j, zr, zi);
    const __m256d wv = _mm256_loadu_pd(w + j);
    sr = _mm256_fmadd_pd(wv, zr, sr);
    si = _mm256_fmadd_pd(wv, zi, si);
  }
  double tr = hsum(sr), ti = hsum(si);
  for (; j < n; ++j) {
    const double abr = a.re[j] * b.re[j] - a.im[j] * b.im[j];
    const double abi = a.re[j] * b.im[j] + a.im[j] * b.re[j];
    tr += w[j] * (abr * c.re[j] - abi * c.im[j]);
    ti += w[j] * (abr * c.im[j] + abi * c.re[j]);
  }
  return {tr, ti};
}

void accumulate_phase_projection(PhaseRow a, PhaseRow b, PhaseRow c, std::complex<double> s,
                                 const double* w, const double coef[3], double* out_x,
                                 double* out_y, double* out_z, std::size_t n) {
  const __m256d s_re = _mm256_set1_pd(s.real()), s_im = _mm256_set1_pd(s.imag());
  const __m256d c0 = _mm256_set1_pd(coef[0]), c1 = _mm256_set1_pd(coef[1]),
                c2 = _mm256_set1_pd(coef[2]);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d zr, zi;
    triple(a, b, c, j, zr, zi);
    const __m256d p =
        _mm256_mul_pd(_mm256_loadu_pd(w + j), _mm256_fmsub_pd(s_re, zi, _mm256_mul_pd(s_im, zr)));
    _mm256_storeu_pd(out_x + j, _mm256_fmadd_pd(c0, p, _mm256_loadu_pd(out_x + j)));
    _mm256_storeu_pd(out_y + j, _mm256_fmadd_pd(c1, p, _mm256_loadu_pd(out_y + j)));
    _mm256_storeu_pd(out_z + j, _mm256_fmadd_pd(c2, p, _mm256_loadu_pd(out_z + j)));
  }
  for (; j < n; ++j) {
    const double abr = a.re[j] * b.re[j] - a.im[j] * b.im[j];
    const double abi = a.re[j] * b.im[j] + a.im[j] * b.re[j];
    const double zr = abr * c.re[j] - abi * c.im[j];
    const double zi = abr * c.im[j] + abi * c.re[j];
    const double p = w[j] * (s.real() * zi - s.imag() * zr);
    out_x[j] += coef[0] * p;
    out_y[j] += coef[1] * p;
    out_z[j] += coef[2] * p;
  }
}

double weighted_power_sum(const double* z, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // z holds re0 im0 re1 im1 | re2 im2 re3 im3
    const __m256d z01 = _mm256_loadu_pd(z + 2 * i);
    const __m256d z23 = _mm256_loadu_pd(z + 2 * i + 4);
    const __m256d sq01 = _mm256_mul_pd(z01, z01);
    const __m256d sq23 = _mm256_mul_pd(z23, z23);
    // hadd gives |z0|^2 |z2|^2 |z1|^2 |z3|^2
    const __m256d mag = _mm256_hadd_pd(sq01, sq23);
    const __m256d ordered = _mm256_permute4x64_pd(mag, 0b11011000);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), ordered, acc);
  }
  double t = hsum(acc);
  for (; i < n; ++i) t += w[i] * (z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
  return t;
}

}  // namespace ldrop::simd::avx2
