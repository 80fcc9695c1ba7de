#pragma once

#include <cstddef>
#include <vector>

#include "ldrop/geom/voxel.hpp"

namespace ldrop {

// Piecewise-constant charge density on the cells of a GridBox.
struct ChargeGrid {
  GridBox box;
  std::vector<double> f;  // same layout as VoxelSet::occ

  static ChargeGrid from_voxels(const VoxelSet& v, double value = 1.0);
};

inline constexpr std::size_t kGridPointBudget = std::size_t(1) << 25;

// D(f) = 1/2 iint f(x) f(y) / |x - y| for the piecewise-constant field.
// Cell pairs use the exact cube-cube integral for offsets within 2 cells and
// the point approximation h^5/|o| beyond. Throws ArgumentError when the padded
// FFT grid exceeds `budget` points.
double freespace_coulomb_energy(const ChargeGrid& g, std::size_t budget = kGridPointBudget);

// Cross term D(f, g) = 1/2 iint f g / |x - y| (both on the same box).
double freespace_coulomb_cross(const ChargeGrid& a, const ChargeGrid& b,
                               std::size_t budget = kGridPointBudget);

// O(n^2) reference with the same cell-pair kernel; for tests.
double freespace_coulomb_energy_direct(const ChargeGrid& g);

// Smallest 2^a 3^b 5^c 7^d >= n.
std::size_t good_fft_size(std::size_t n);

}  // namespace ldrop
