#pragma once

#include <cstdint>
#include <vector>

#include "ldrop/jellium/finite.hpp"
#include "ldrop/jellium/lbfgs.hpp"
#include "ldrop/jellium/periodic.hpp"

namespace ldrop {

struct LocalParams {
  LbfgsParams lbfgs;
  // points closer than this fraction of the mean spacing count as infeasible
  double min_separation = 0.02;
};

struct LocalResult {
  PointConfiguration cfg;
  double energy = 0.0;  // objective value (periodic: unit-charge pair sum; finite: total)
  int iterations = 0;
  bool converged = false;
  std::string message;
  std::vector<TraceRow> trace;
};

// L-BFGS on sum_{j<k} G_l(x_j - x_k) with positions wrapped into the cell.
LocalResult minimize_periodic(const PointConfiguration& seed, const PeriodicJellium& ev,
                              const LocalParams& p = {});

// L-BFGS on the finite-domain energy through a smooth map from R^k onto the
// interior (softmax barycentric for tetrahedra, tanh for cubes, radial tanh for balls).
LocalResult minimize_finite(const PointConfiguration& seed, const FiniteJellium& ev,
                            const LocalParams& p = {});

struct BasinHopParams {
  int restarts = 50;
  int hops = 8;              // Metropolis hops after each restart's first descent
  double step = 0.15;        // hop displacement, fraction of the mean spacing
  double temperature = 0.02; // Metropolis temperature, in units of 1 / mean spacing
  std::uint64_t seed = 1;
  bool crystal_seed = false; // restart 0 starts from a cubic crystal when N allows
  LocalParams local;
};

struct RestartRecord {
  int index;
  std::uint64_t seed;
  double energy;        // pair sum at density-scaled side
  double per_particle;  // (pair + Madelung self term) / N
};

struct BasinHopResult {
  PointConfiguration best;
  double best_energy = 0.0;
  double best_per_particle = 0.0;
  int best_restart = 0;
  std::vector<RestartRecord> restarts;
};

// Global search for N unit charges in the periodic cube of side (N / density)^{1/3}.
// Restarts run in parallel on independent streams of the master seed and are merged
// by index, so the result does not depend on the thread count.
BasinHopResult basin_hop_periodic(std::size_t n, double density, const BasinHopParams& p = {});

// Random interior point of a domain (ball, cube or tetrahedron).
Vec3 random_point_in(const Domain& d, Rng& rng);

}  // namespace ldrop
