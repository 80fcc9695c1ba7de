#include "ldrop/simd/kernels.hpp"

namespace ldrop::simd::scalar {

std::complex<double> triple_product_sum(PhaseRow a, PhaseRow b, PhaseRow c, const double* w,
                                        std::size_t n) {
  double sr = 0.0, si = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double abr = a.re[j] * b.re[j] - a.im[j] * b.im[j];
    const double abi = a.re[j] * b.im[j] + a.im[j] * b.re[j];
    const double zr = abr * c.re[j] - abi * c.im[j];
    const double zi = abr * c.im[j] + abi * c.re[j];
    sr += w[j] * zr;
    si += w[j] * zi;
  }
  return {sr, si};
}

void accumulate_phase_projection(PhaseRow a, PhaseRow b, PhaseRow c, std::complex<double> s,
                                 const double* w, const double coef[3], double* out_x,
                                 double* out_y, double* out_z, std::size_t n) {
  const double s_re = s.real(), s_im = s.imag();
  for (std::size_t j = 0; j < n; ++j) {
    const double abr = a.re[j] * b.re[j] - a.im[j] * b.im[j];
    const double abi = a.re[j] * b.im[j] + a.im[j] * b.re[j];
    const double zr = abr * c.re[j] - abi * c.im[j];
    const double zi = abr * c.im[j] + abi * c.re[j];
    const double p = w[j] * (s_re * zi - s_im * zr);
    out_x[j] += coef[0] * p;
    out_y[j] += coef[1] * p;
    out_z[j] += coef[2] * p;
  }
}

double weighted_power_sum(const double* z, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * (z[2 * i] * z[2 * i] + z[2 * i + 1] * z[2 * i + 1]);
  return acc;
}

}  // namespace ldrop::simd::scalar
