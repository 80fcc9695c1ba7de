#pragma once

#include <vector>

#include "ldrop/core/types.hpp"

namespace ldrop {

// Zero-mean periodic Coulomb kernel of the cell l Z^3:
//   G_l(x) = (4 pi / l^3) sum_{k != 0} e^{i k.x} / |k|^2,
// evaluated by the Ewald split with parameter alpha (default pi / l^2).
class PeriodicKernel {
 public:
  explicit PeriodicKernel(double side, double alpha = 0.0, double tail_tol = 1e-12);

  double side() const { return side_; }
  double alpha() const { return alpha_; }
  double real_cutoff() const { return rc_; }
  double recip_cutoff() const { return kc_; }
  int real_shells() const;
  int recip_shells() const;

  double value(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;

  // lim_{x -> 0} (G_l(x) - 1/|x|), the Madelung constant of l Z^3
  double regular_part_at_origin() const;

  // x reduced to the cube [-l/2, l/2)^3
  Vec3 minimum_image(const Vec3& x) const;

 private:
  double side_, alpha_, rc_, kc_;
  std::vector<Vec3> images_;   // translations t with |t| <= rc + sqrt(3) l / 2
  std::vector<Vec3> kvecs_;    // half space of nonzero wave vectors with |k| <= kc
  std::vector<double> kweights_;  // 2 * (4 pi / V) e^{-k^2 / 4 alpha} / k^2
};

double periodic_green(const PeriodicKernel& kernel, const Vec3& x);

// Madelung constant of Z^3, about -2.8373.
double madelung_z3();

}  // namespace ldrop
