#include "ldrop/geom/voxel.hpp"

#include <cmath>
#include <numeric>

#include "ldrop/core/parallel.hpp"

namespace ldrop {

Vec3 GridBox::cell_center(long i, long j, long k) const {
  return Vec3((origin[0] + i + 0.5) * h, (origin[1] + j + 0.5) * h, (origin[2] + k + 0.5) * h);
}

std::size_t VoxelSet::count() const {
  return static_cast<std::size_t>(std::count(occ.begin(), occ.end(), std::uint8_t{1}));
}

double VoxelSet::measure() const { return box.h * box.h * box.h * static_cast<double>(count()); }

bool VoxelSet::at(long i, long j, long k) const {
  if (i < 0 || j < 0 || k < 0 || i >= box.dims[0] || j >= box.dims[1] || k >= box.dims[2]) return false;
  return occ[box.index(i, j, k)] != 0;
}

double BallUnion::volume() const {
  double v = 0.0;
  for (const auto& b : balls) v += 4.0 * kPi / 3.0 * b.radius * b.radius * b.radius;
  return v;
}

double BallUnion::perimeter() const {
  double a = 0.0;
  for (const auto& b : balls) a += 4.0 * kPi * b.radius * b.radius;
  return a;
}

BallUnion make_ball_union(std::vector<Ball> balls) {
  for (const auto& b : balls)
    if (!(b.radius > 0.0)) throw ArgumentError("ball radius must be positive");
  BallUnion u;
  u.balls = std::move(balls);
  u.disjoint = true;
  for (std::size_t i = 0; i < u.balls.size(); ++i)
    for (std::size_t j = i + 1; j < u.balls.size(); ++j)
      if (!((u.balls[i].center - u.balls[j].center).norm() > u.balls[i].radius + u.balls[j].radius))
        u.disjoint = false;
  return u;
}

GridBox grid_box_covering(double h, const Vec3& lo, const Vec3& hi, long pad) {
  if (!(h > 0.0)) throw ArgumentError("grid spacing must be positive");
  GridBox g;
  g.h = h;
  for (int d = 0; d < 3; ++d) {
    const long a = static_cast<long>(std::floor(lo[d] / h)) - pad;
    const long b = static_cast<long>(std::ceil(hi[d] / h)) + pad;
    g.origin[d] = a;
    g.dims[d] = std::max(0L, b - a);
  }
  return g;
}

namespace {

template <class Inside>
VoxelSet fill(const GridBox& box, Inside inside) {
  VoxelSet v;
  v.box = box;
  v.occ.assign(box.size(), 0);
  // one task per x-slab; slabs write disjoint ranges
  parallel_for(static_cast<std::size_t>(box.dims[0]), [&](std::size_t si) {
    const long i = static_cast<long>(si);
    for (long j = 0; j < box.dims[1]; ++j)
      for (long k = 0; k < box.dims[2]; ++k)
        if (inside(box.cell_center(i, j, k))) v.occ[box.index(i, j, k)] = 1;
  });
  return v;
}

}  // namespace

VoxelSet voxelize(const BallUnion& b, const GridBox& box) {
  return fill(box, [&](const Vec3& x) {
    for (const auto& ball : b.balls)
      if ((x - ball.center).squaredNorm() < ball.radius * ball.radius) return true;
    return false;
  });
}

VoxelSet voxelize(const BallUnion& b, double h) {
  if (!(h > 0.0)) throw ArgumentError("grid spacing must be positive");
  if (b.balls.empty()) {
    VoxelSet v;
    v.box.h = h;
    return v;
  }
  double rmin = std::numeric_limits<double>::infinity();
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
  for (const auto& ball : b.balls) {
    rmin = std::min(rmin, ball.radius);
    lo = lo.cwiseMin(ball.center - Vec3::Constant(ball.radius));
    hi = hi.cwiseMax(ball.center + Vec3::Constant(ball.radius));
  }
  if (h > rmin / 8.0 * (1.0 + 1e-12)) throw ArgumentError("grid spacing too coarse: need h <= min radius / 8");
  return voxelize(b, grid_box_covering(h, lo, hi));
}

VoxelSet voxelize(const Domain& d, const GridBox& box) {
  validate(d);
  return fill(box, [&](const Vec3& x) { return contains_strictly(d, x); });
}

VoxelSet voxelize(const Domain& d, double h) {
  auto [lo, hi] = bounding_box(d);
  return voxelize(d, grid_box_covering(h, lo, hi));
}

VoxelSet embed(const VoxelSet& v, const GridBox& box) {
  VoxelSet out;
  out.box = box;
  out.occ.assign(box.size(), 0);
  if (std::abs(box.h - v.box.h) > 1e-15 * box.h) throw ArgumentError("grid spacings differ");
  for (long i = 0; i < v.box.dims[0]; ++i)
    for (long j = 0; j < v.box.dims[1]; ++j)
      for (long k = 0; k < v.box.dims[2]; ++k) {
        if (!v.occ[v.box.index(i, j, k)]) continue;
        const long a = i + v.box.origin[0] - box.origin[0];
        const long b = j + v.box.origin[1] - box.origin[1];
        const long c = k + v.box.origin[2] - box.origin[2];
        if (a < 0 || b < 0 || c < 0 || a >= box.dims[0] || b >= box.dims[1] || c >= box.dims[2])
          throw ArgumentError("target grid does not contain the voxel set");
        out.occ[box.index(a, b, c)] = 1;
      }
  return out;
}

namespace {

// Unordered pairs {p, p + d} with exactly one occupied cell.
std::uint64_t transitions(const VoxelSet& v, long dx, long dy, long dz) {
  const auto& b = v.box;
  std::vector<std::uint64_t> per_slab(static_cast<std::size_t>(b.dims[0]), 0);
  parallel_for(per_slab.size(), [&](std::size_t si) {
    const long i = static_cast<long>(si);
    std::uint64_t c = 0;
    for (long j = 0; j < b.dims[1]; ++j)
      for (long k = 0; k < b.dims[2]; ++k) {
        if (!v.occ[b.index(i, j, k)]) continue;
        if (!v.at(i + dx, j + dy, k + dz)) ++c;
        if (!v.at(i - dx, j - dy, k - dz)) ++c;
      }
    per_slab[si] = c;
  });
  return std::accumulate(per_slab.begin(), per_slab.end(), std::uint64_t{0});
}

}  // namespace

double perimeter_estimate(const VoxelSet& v, PerimeterMethod m) {
  if (v.occ.empty()) return 0.0;
  const double h2 = v.box.h * v.box.h;
  if (m == PerimeterMethod::FaceCount) {
    const auto n = transitions(v, 1, 0, 0) + transitions(v, 0, 1, 0) + transitions(v, 0, 0, 1);
    return h2 * static_cast<double>(n);
  }
  // Cauchy-Crofton: area = 2 * mean over directions u of the projected crossing
  // count. Lines along lattice direction d carry area h^2/|d| each.
  const double wsum = 6 * kCroftonWeights[0] + 12 * kCroftonWeights[1] + 8 * kCroftonWeights[2];
  static const std::array<std::array<long, 3>, 13> dirs{{{1, 0, 0},
                                                         {0, 1, 0},
                                                         {0, 0, 1},
                                                         {1, 1, 0},
                                                         {1, -1, 0},
                                                         {1, 0, 1},
                                                         {1, 0, -1},
                                                         {0, 1, 1},
                                                         {0, 1, -1},
                                                         {1, 1, 1},
                                                         {1, 1, -1},
                                                         {1, -1, 1},
                                                         {-1, 1, 1}}};
  double area = 0.0;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const auto& d = dirs[i];
    const int cls = i < 3 ? 0 : (i < 9 ? 1 : 2);
    const double len = std::sqrt(double(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]));
    // undirected line: both signs of the direction share one transition count
    const double w = 2.0 * kCroftonWeights[cls] / wsum;
    area += w * static_cast<double>(transitions(v, d[0], d[1], d[2])) * h2 / len;
  }
  return 2.0 * area;
}

}  // namespace ldrop
