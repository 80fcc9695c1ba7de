#pragma once

#include <cstdint>
#include <string>

#include "ldrop/jellium/optimize.hpp"

namespace ldrop {

// Optimized periodic configuration at unit density (side N^{1/3}). The pair sum
// scales as 1/length, so one optimization serves every density.
struct UnitCellJellium {
  std::size_t n = 0;
  PointConfiguration x;     // recentered, sum x_j = 0
  double pair_unit = 0.0;   // sum_{j<k} G(x_j - x_k) at side N^{1/3}
  BasinHopResult search;
};

UnitCellJellium optimize_unit_cell(std::size_t n, const BasinHopParams& p);

struct TrialPoints {
  PointConfiguration X;  // periodic optimizer, cell [-l/2, l/2)^3 after recentering
  PointConfiguration Y;  // lattice points kept away from the cell boundary
  double side = 0.0;
  double length_scale = 0.0;  // (m_* / rho)^{1/3} = l / N^{1/3}
  double declared_c = 0.25;
  double used_c = 0.25;       // shrunk when the lattice cannot honor the declared margin
  double boundary_margin = 0.0;   // min_j d(y_j, boundary of the cell)
  double min_separation_y = 0.0;
  std::string warning;
};

// X: basin-hop minimizer of sum G_l, scaled from unit density, centered.
// Y: first N points of a k^3 grid (k = ceil(N^{1/3})) with spacing l / (k + 1), centered.
TrialPoints build_trial_points(std::size_t n, double side, const BasinHopParams& p, double c = 0.25);
TrialPoints build_trial_points(const UnitCellJellium& cell, double side, double c = 0.25);

}  // namespace ldrop
