#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"
#include "ldrop/core/rng.hpp"
#include "ldrop/core/types.hpp"
#include "ldrop/geom/lattice.hpp"

namespace ldrop {

// Point charges, all carrying the same charge q.
struct PointConfiguration {
  std::vector<Vec3> x;
  double q = 1.0;

  std::size_t size() const { return x.size(); }
  Vec3 centroid() const;
};

struct JelliumEnergyReport {
  double pair = 0.0;
  double point_background = 0.0;
  double background_background = 0.0;
  double madelung_self = 0.0;  // periodic only
  double total = 0.0;
  double per_particle = 0.0;   // total / N, 0 when N = 0
};

JelliumEnergyReport finish_report(JelliumEnergyReport r, std::size_t n);

// Uniform points in the cube [0, side)^3.
PointConfiguration random_periodic_configuration(std::size_t n, double side, Rng& rng);

// Points of a lattice of the given kind filling the cube [0, side)^3 with k
// conventional cells per edge (k^3, 2k^3 or 4k^3 points for SC, BCC, FCC).
PointConfiguration cubic_crystal(LatticeKind kind, int k, double side);

// If n is k^3, 2k^3 or 4k^3, the matching cubic crystal kind and k; BCC is
// preferred when several match.
bool crystal_for_count(std::size_t n, LatticeKind* kind, int* k);

// Translate so that sum x_j = 0.
void recenter(PointConfiguration& c);

nlohmann::json to_json(const PointConfiguration& c);
PointConfiguration configuration_from_json(const nlohmann::json& j);
nlohmann::json to_json(const JelliumEnergyReport& r);

}  // namespace ldrop
