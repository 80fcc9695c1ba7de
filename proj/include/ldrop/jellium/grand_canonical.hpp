#pragma once

#include <cstdint>
#include <vector>

#include "ldrop/jellium/optimize.hpp"

namespace ldrop {

struct GcPointJelliumParams {
  int starts = 6;  // random starts per particle count
  std::uint64_t seed = 1;
  LocalParams local;
  double tol = 1e-10;  // background self-energy quadrature
};

struct GcCountRow {
  int n;
  double value;     // best energy found with n particles
  double average;   // J_n: the energy averaged over independent uniform positions
};

struct GcPointJelliumResult {
  int best_n = 0;
  PointConfiguration best;
  double value = 0.0;
  std::vector<GcCountRow> rows;
  double background_self = 0.0;  // 1/2 iint over (A Delta)^2
  // (1 - t) J_N + t J_{N+1} with A^3 / q = N + t, = -(N + t^2) q^2 / (2 A^6) iint
  double interpolated_bound = 0.0;
};

// min over n in [max(0, floor(A^3/q) - ceil(A^2)), ceil(A^3/q) + ceil(A^2)] and over
// positions in A * delta of the finite jellium energy with charge q and unit background.
// delta must have unit volume.
GcPointJelliumResult grand_canonical_point_jellium(double A, const Domain& delta, double q,
                                                   const GcPointJelliumParams& p = {});

// J_n for the given self-energy S = 1/2 iint_{(A delta)^2}.
double averaged_energy(int n, double A, double q, double self);

}  // namespace ldrop
