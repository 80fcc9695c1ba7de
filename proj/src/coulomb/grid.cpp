#include "ldrop/coulomb/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <complex>
#include <memory>
#include <mutex>

#include "ldrop/core/parallel.hpp"
#include "ldrop/coulomb/pair.hpp"
#include "ldrop/simd/kernels.hpp"

namespace ldrop {

ChargeGrid ChargeGrid::from_voxels(const VoxelSet& v, double value) {
  ChargeGrid g;
  g.box = v.box;
  g.f.resize(v.occ.size());
  for (std::size_t i = 0; i < v.occ.size(); ++i) g.f[i] = v.occ[i] ? value : 0.0;
  return g;
}

std::size_t good_fft_size(std::size_t n) {
  for (std::size_t m = std::max<std::size_t>(n, 1);; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

namespace {

// dimensionless pair kernel between unit cells at integer offset o
double cell_kernel(long a, long b, long c) {
  const long m = std::max({std::labs(a), std::labs(b), std::labs(c)});
  if (m <= 2) return unit_cube_pair(int(a), int(b), int(c));
  return 1.0 / std::sqrt(double(a * a + b * b + c * c));
}

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

struct Spectrum {
  std::array<int, 3> n{};
  std::size_t nc = 0;  // complex entries
  std::unique_ptr<double, FftwFree> real;
  std::unique_ptr<fftw_complex, FftwFree> spec;
};

Spectrum forward(const std::vector<double>& data, const std::array<int, 3>& n) {
  Spectrum s;
  s.n = n;
  const std::size_t nr = std::size_t(n[0]) * n[1] * n[2];
  s.nc = std::size_t(n[0]) * n[1] * (n[2] / 2 + 1);
  s.real.reset(static_cast<double*>(fftw_malloc(sizeof(double) * nr)));
  s.spec.reset(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * s.nc)));
  if (!s.real || !s.spec) throw NumericError("grid Coulomb: allocation failed");
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_r2c_3d(n[0], n[1], n[2], s.real.get(), s.spec.get(), FFTW_ESTIMATE);
  }
  std::copy(data.begin(), data.end(), s.real.get());
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  return s;
}

struct Padded {
  std::array<int, 3> n{};
  std::vector<double> weights;  // multiplicity * Re(K^) / P per complex entry
};

Padded kernel_weights(const GridBox& box, std::size_t budget) {
  Padded p;
  std::size_t total = 1;
  for (int d = 0; d < 3; ++d) {
    p.n[d] = int(good_fft_size(std::size_t(2 * std::max<long>(box.dims[d], 1) - 1)));
    total *= std::size_t(p.n[d]);
  }
  if (total > budget)
    throw ArgumentError("grid Coulomb: padded grid of " + std::to_string(total) +
                        " points exceeds the budget of " + std::to_string(budget));
  std::vector<double> k(total);
  const auto& n = p.n;
  parallel_for(std::size_t(n[0]), [&](std::size_t i) {
    const long a = long(i) <= n[0] / 2 ? long(i) : long(i) - n[0];
    for (int j = 0; j < n[1]; ++j) {
      const long b = j <= n[1] / 2 ? j : j - n[1];
      for (int l = 0; l < n[2]; ++l) {
        const long c = l <= n[2] / 2 ? l : l - n[2];
        k[(i * n[1] + j) * n[2] + l] = cell_kernel(a, b, c);
      }
    }
  });
  Spectrum ks = forward(k, n);
  const int nzc = n[2] / 2 + 1;
  p.weights.resize(ks.nc);
  for (std::size_t idx = 0; idx < ks.nc; ++idx) {
    const int l = int(idx % nzc);
    const double mult = (l == 0 || (n[2] % 2 == 0 && l == n[2] / 2)) ? 1.0 : 2.0;
    p.weights[idx] = mult * ks.spec.get()[idx][0] / double(total);
  }
  return p;
}

std::vector<double> pad(const ChargeGrid& g, const std::array<int, 3>& n) {
  std::vector<double> out(std::size_t(n[0]) * n[1] * n[2], 0.0);
  const auto& d = g.box.dims;
  for (long i = 0; i < d[0]; ++i)
    for (long j = 0; j < d[1]; ++j)
      for (long l = 0; l < d[2]; ++l)
        out[(std::size_t(i) * n[1] + j) * n[2] + l] = g.f[g.box.index(i, j, l)];
  return out;
}

void check(const ChargeGrid& g) {
  if (g.f.size() != g.box.size()) throw ArgumentError("grid Coulomb: field size does not match box");
  if (!(g.box.h > 0)) throw ArgumentError("grid Coulomb: h must be positive");
}

}  // namespace

double freespace_coulomb_energy(const ChargeGrid& g, std::size_t budget) {
  check(g);
  bool any = false;
  for (double v : g.f)
    if (v != 0.0) any = true;
  if (!any) return 0.0;
  const Padded p = kernel_weights(g.box, budget);
  const Spectrum fs = forward(pad(g, p.n), p.n);
  const double s = simd::weighted_power_sum(&fs.spec.get()[0][0], p.weights.data(), fs.nc);
  return 0.5 * std::pow(g.box.h, 5) * s;
}

double freespace_coulomb_cross(const ChargeGrid& a, const ChargeGrid& b, std::size_t budget) {
  check(a);
  check(b);
  if (a.box.dims != b.box.dims || a.box.origin != b.box.origin || a.box.h != b.box.h)
    throw ArgumentError("grid Coulomb: cross term needs identical boxes");
  // polarization: D(a,b) = (D(a+b) - D(a-b)) / 4
  ChargeGrid sum = a, diff = a;
  for (std::size_t i = 0; i < a.f.size(); ++i) {
    sum.f[i] += b.f[i];
    diff.f[i] -= b.f[i];
  }
  return 0.25 * (freespace_coulomb_energy(sum, budget) - freespace_coulomb_energy(diff, budget));
}

double freespace_coulomb_energy_direct(const ChargeGrid& g) {
  check(g);
  const auto& d = g.box.dims;
  double total = 0.0;
  for (long i = 0; i < d[0]; ++i)
    for (long j = 0; j < d[1]; ++j)
      for (long l = 0; l < d[2]; ++l) {
        const double fi = g.f[g.box.index(i, j, l)];
        if (fi == 0.0) continue;
        for (long a = 0; a < d[0]; ++a)
          for (long b = 0; b < d[1]; ++b)
            for (long c = 0; c < d[2]; ++c) {
              const double fj = g.f[g.box.index(a, b, c)];
              if (fj != 0.0) total += fi * fj * cell_kernel(a - i, b - j, c - l);
            }
      }
  return 0.5 * std::pow(g.box.h, 5) * total;
}

}  // namespace ldrop
