#pragma once

#include <vector>

#include "ldrop/geom/domain.hpp"
#include "ldrop/jellium/config.hpp"

namespace ldrop {

// Point charges q in a domain D with a uniform background of density rho:
//   q^2 sum_{j<k} 1/|x_j - x_k| - q rho sum_j Phi_D(x_j) + rho^2/2 iint_{D x D} 1/|x - y|.
// The background self-energy is computed once per evaluator.
class FiniteJellium {
 public:
  FiniteJellium(Domain domain, double q, double background = 1.0, double tol = 1e-10);

  const Domain& domain() const { return domain_; }
  double charge() const { return q_; }
  double background_self() const { return bb_; }

  JelliumEnergyReport report(const std::vector<Vec3>& x) const;
  // total energy; grad (optional) receives d/dx_j. Points are not range-checked.
  double energy(const std::vector<Vec3>& x, std::vector<Vec3>* grad = nullptr) const;

 private:
  Domain domain_;
  double q_, rho_, bb_;
};

// One-shot evaluation; throws ArgumentError for points not strictly inside the
// domain and PoleError for coincident points.
JelliumEnergyReport finite_jellium_energy(const PointConfiguration& cfg, const Domain& domain,
                                          double background = 1.0, double tol = 1e-10);

}  // namespace ldrop
