#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ldrop/core/types.hpp"
#include "ldrop/geom/domain.hpp"

namespace ldrop {

// Cells of side h on the global grid h*Z^3: cell (i, j, k) covers
// [i h, (i+1) h) x ... Anchoring on a global grid keeps occupancy of a translated
// set translation-consistent for shifts that are multiples of h.
struct GridBox {
  double h = 1.0;
  std::array<long, 3> origin{0, 0, 0};  // index of the first cell
  std::array<long, 3> dims{0, 0, 0};

  std::size_t size() const { return static_cast<std::size_t>(dims[0] * dims[1] * dims[2]); }
  std::size_t index(long i, long j, long k) const {
    return static_cast<std::size_t>((i * dims[1] + j) * dims[2] + k);
  }
  Vec3 cell_center(long i, long j, long k) const;  // local indices
};

struct VoxelSet {
  GridBox box;
  std::vector<std::uint8_t> occ;

  std::size_t count() const;
  double measure() const;
  bool at(long i, long j, long k) const;  // local indices, false outside
};

struct BallUnion {
  std::vector<Ball> balls;
  bool disjoint = true;

  double volume() const;
  double perimeter() const;
};

// Builds the union and sets the disjoint flag from |c_i - c_j| > R_i + R_j.
BallUnion make_ball_union(std::vector<Ball> balls);

// Smallest grid box (on h*Z^3) covering [lo, hi] plus `pad` cells on each side.
GridBox grid_box_covering(double h, const Vec3& lo, const Vec3& hi, long pad = 1);

VoxelSet voxelize(const BallUnion& b, double h);
VoxelSet voxelize(const Domain& d, double h);
VoxelSet voxelize(const Domain& d, const GridBox& box);
VoxelSet voxelize(const BallUnion& b, const GridBox& box);

// Same occupancy embedded into a larger box (must contain the original).
VoxelSet embed(const VoxelSet& v, const GridBox& box);

enum class PerimeterMethod { Crofton13, FaceCount };

// Crofton13: transitions along the 13 lattice directions weighted by the
// solid angles of their Voronoi cells on the sphere. FaceCount: exposed faces times h^2,
// exact for unions of grid-aligned boxes.
double perimeter_estimate(const VoxelSet& v, PerimeterMethod m = PerimeterMethod::Crofton13);

// Solid-angle fractions for the axis, face-diagonal and body-diagonal
// directions (one of each sign counted separately; 6 a + 12 b + 8 c = 1).
inline constexpr std::array<double, 3> kCroftonWeights{0.04577789, 0.03698062, 0.03519563};

}  // namespace ldrop
