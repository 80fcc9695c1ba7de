#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "ldrop/geom/domain.hpp"
#include "ldrop/geom/voxel.hpp"
#include "ldrop/jellium/lbfgs.hpp"

namespace ldrop {

struct FgcParams {
  int k_min = -1;  // ball-count window; -1 picks it around rho |Lambda| / m_*
  int k_max = -1;
  int starts = 4;  // per ball count; start 0 comes from a point-jellium optimum
  std::uint64_t seed = 1;
  LbfgsParams lbfgs;
  double tol = 1e-10;
};

struct FgcRow {
  int k;
  double value;
  bool converged;
};

struct FgcResult {
  double value = 0.0;  // upper bound on F_Lambda(rho) from the ball ansatz
  int k = 0;
  BallUnion omega;     // certificate
  std::vector<FgcRow> rows;
  double background_self = 0.0;  // rho^2 D(1_Lambda)
};

// min over k disjoint balls inside Lambda of E_Lambda[rho, Omega] - mu_* |Omega|.
// Centers are mapped into Lambda shrunk about its incenter by the ball radius, so
// containment holds by construction; overlaps are an infeasible region for the line search.
FgcResult grand_canonical_F(const Domain& lambda, double rho, const FgcParams& p = {});

// Energy of the ansatz (E - mu_* |Omega|) for fixed balls; used by tests.
double grand_canonical_objective(const BallUnion& omega, const Domain& lambda, double rho, double tol = 1e-10);

nlohmann::json to_json(const FgcResult& r);

}  // namespace ldrop
