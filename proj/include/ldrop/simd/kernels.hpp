#pragma once

#include <complex>
#include <cstddef>

// Inner loops of the Ewald reciprocal sum and of the grid Coulomb energy.
// Each kernel has a scalar reference version and an AVX2 version; the active
// one is picked at runtime from the CPU features (override: LDROP_SIMD=scalar).

namespace ldrop::simd {

enum class Backend { Scalar, Avx2 };

bool backend_available(Backend b);
Backend active_backend();
void set_backend(Backend b);  // throws ArgumentError if unavailable
const char* backend_name(Backend b);

// One row of a phase table: values e^{i n k x_j} for particles j, stored split.
struct PhaseRow {
  const double* re;
  const double* im;
};

// sum_j w_j * a_j * b_j * c_j
std::complex<double> triple_product_sum(PhaseRow a, PhaseRow b, PhaseRow c, const double* w,
                                        std::size_t n);

// p_j = Im(conj(s) * a_j b_j c_j);  out_d[j] += coef[d] * w_j * p_j  for d = 0, 1, 2
void accumulate_phase_projection(PhaseRow a, PhaseRow b, PhaseRow c, std::complex<double> s,
                                 const double* w, const double coef[3], double* out_x,
                                 double* out_y, double* out_z, std::size_t n);

// sum_i w_i * |z_i|^2 with z interleaved (re, im)
double weighted_power_sum(const double* z, const double* w, std::size_t n);

namespace scalar {
std::complex<double> triple_product_sum(PhaseRow a, PhaseRow b, PhaseRow c, const double* w,
                                        std::size_t n);
void accumulate_phase_projection(PhaseRow a, PhaseRow b, PhaseRow c, std::complex<double> s,
                                 const double* w, const double coef[3], double* out_x,
                                 double* out_y, double* out_z, std::size_t n);
double weighted_power_sum(const double* z, const double* w, std::size_t n);
}  // namespace scalar

namespace avx2 {
std::complex<double> triple_product_sum(PhaseRow a, PhaseRow b, PhaseRow c, const double* w,
                                        std::size_t n);
void accumulate_phase_projection(PhaseRow a, PhaseRow b, PhaseRow c, std::complex<double> s,
                                 const double* w, const double coef[3], double* out_x,
                                 double* out_y, double* out_z, std::size_t n);
double weighted_power_sum(const double* z, const double* w, std::size_t n);
}  // namespace avx2

}  // namespace ldrop::simd
