#pragma once

#include <array>
#include <vector>

#include "ldrop/coulomb/ewald.hpp"
#include "ldrop/jellium/config.hpp"

namespace ldrop {

// Sum_{j<k} G_l(x_j - x_k) and its gradient for a fixed particle count. The
// reciprocal part goes through structure factors built from per-axis phase
// tables, so one evaluation costs O(N * #k) instead of O(N^2 * #k).
// alpha = 0 picks the split from a cost model (sqrt(alpha) l grows like N^{1/6}).
class PeriodicJellium {
 public:
  PeriodicJellium(double side, std::size_t n, double tail_tol = 1e-12, double alpha = 0.0);

  double side() const { return side_; }
  double alpha() const { return alpha_; }
  std::size_t size() const { return n_; }

  // grad (optional) receives d/dx_j for unit charges
  double pair_energy(const std::vector<Vec3>& x, std::vector<Vec3>* grad = nullptr) const;

  // smallest minimum-image distance between distinct points
  double min_separation(const std::vector<Vec3>& x) const;

  Vec3 wrap(const Vec3& p) const;  // into [0, l)^3

 private:
  double side_, alpha_, rc_;
  std::size_t n_;
  int nmax_;
  std::vector<Vec3> images_;
  std::vector<std::array<int, 3>> kidx_;
  std::vector<double> kweight_;  // (4 pi / V) e^{-k^2 / 4 alpha} / k^2, one per +-k pair
};

// Pair term q^2 sum G_l; the self term N q^2 M / (2 l) is added when include_madelung.
// Throws PoleError on coincident points (modulo the lattice).
JelliumEnergyReport periodic_energy(const PointConfiguration& cfg, const PeriodicKernel& kernel,
                                    bool include_madelung);

std::vector<Vec3> periodic_gradient(const PointConfiguration& cfg, const PeriodicKernel& kernel);

}  // namespace ldrop
