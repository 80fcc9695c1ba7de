#pragma once

#include "json.hpp"
#include "ldrop/geom/domain.hpp"
#include "ldrop/geom/voxel.hpp"

namespace ldrop {

// Per(Omega) + D(1_Omega - rho 1_Lambda), D(f) = 1/2 iint f f / |x - y|, term by term.
struct LiquidDropBreakdown {
  double perimeter = 0.0;
  double droplet_droplet = 0.0;      // D(1_Omega)
  double droplet_background = 0.0;   // -2 rho D(1_Omega, 1_Lambda), <= 0
  double background_background = 0.0;  // rho^2 D(1_Lambda)
  double total = 0.0;
  double volume = 0.0;
  double neutrality_defect = 0.0;    // |Omega| - rho |Lambda|
};

// Ball unions: Newton closed forms for the droplet terms, and for a ball B inside Lambda
// int_B Phi_Lambda = |B| (Phi_Lambda(c) - 2 pi R^2 / 5) (Delta Phi = -4 pi on Lambda).
// Requires disjoint balls contained in Lambda and 0 <= rho <= 1.
LiquidDropBreakdown liquid_drop_energy(const BallUnion& omega, const Domain& lambda, double rho,
                                       double tol = 1e-10);

// Voxel sets: every term on the grid (Lambda is voxelized on the same grid);
// the voxel set must lie inside the voxelized Lambda.
LiquidDropBreakdown liquid_drop_energy(const VoxelSet& omega, const Domain& lambda, double rho,
                                       PerimeterMethod method = PerimeterMethod::Crofton13);

struct MassBoundReport {
  bool hypothesis_met = false;  // E_Lambda[rho, Omega] <= mu_* |Omega|
  bool bound_holds = false;     // |Omega| <= 8 + 16 pi rho diam(Lambda)^3
  bool pass = false;            // hypothesis not met, or bound holds
  double energy = 0.0;
  double volume = 0.0;
  double bound = 0.0;
  std::string status;           // "pass", "fail" or "hypothesis not met"
};

MassBoundReport mass_bound_check(const BallUnion& omega, const Domain& lambda, double rho);

nlohmann::json to_json(const LiquidDropBreakdown& b);
nlohmann::json to_json(const MassBoundReport& r);

}  // namespace ldrop
