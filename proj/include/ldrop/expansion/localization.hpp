#pragma once

#include <cstdint>

#include "json.hpp"
#include "ldrop/droplet/grand_canonical.hpp"
#include "ldrop/geom/voxel.hpp"

namespace ldrop {

// Rigid motions g = (t, R) act by x -> t + R x; dg is Lebesgue in t times the
// probability measure on SO(3), so (1/l^3) int 1_{g l Delta}(x) dg = 1 for |Delta| = 1.

struct PerimeterIdentityReport {
  double lhs = 0.0;          // Per(Omega), closed form
  double rhs = 0.0;          // int Per(Omega cap g l Delta) dg / l^3 - Per(Delta) |Omega| / l
  double sigma = 0.0;        // standard error of rhs
  double localized_mean = 0.0;  // first term of rhs
  double correction = 0.0;      // Per(Delta) |Omega| / l
  std::size_t samples = 0;
  double z_score() const { return sigma > 0 ? (rhs - lhs) / sigma : 0.0; }
};

// Delta must have unit volume. Translations are drawn uniformly from the ball of
// centroids for which g l Delta can meet Omega; inside each motion the sphere part uses a
// randomly rotated Fibonacci set and the face part uniform points on the faces.
PerimeterIdentityReport localized_perimeter_check(const BallUnion& omega, const Tetrahedron& delta,
                                                    double l, std::size_t samples, std::uint64_t seed);

struct CoulombInequalityReport {
  double lhs = 0.0;    // D(1_Omega - rho 1_Lambda), exact
  double rhs = 0.0;    // int dg / l^3 D((1_Omega - rho 1_Lambda) 1_{g l Delta}), sampled
  double sigma = 0.0;
  double margin = 0.0; // lhs - rhs
  bool holds = false;  // lhs >= rhs - 3 sigma
  std::size_t samples = 0;
};

// The localized average equals 1/2 iint f(x) f(y) P(y - x) / |x - y| with P the
// rotation-averaged covariogram of l Delta. Sampling only the deficit 1 - P against the
// exact lhs keeps the estimator bounded.
CoulombInequalityReport localized_coulomb_check(const BallUnion& omega, const Cube& lambda, double rho,
                                                    const Tetrahedron& delta, double l, std::size_t samples,
                                                    std::uint64_t seed);

struct LowerSimplexReport {
  double rho = 0.0;
  double A = 0.0;
  double side = 0.0;   // l = A rho^{-1/3}
  double F = 0.0;      // ansatz upper bound on F_{l Delta}(rho)
  double value = 0.0;  // F / (rho^{1/3} A^3); the -C/A correction is not quantified
  int k = 0;
};

LowerSimplexReport lower_simplex_rhs(double rho, double A, const FgcParams& p = {});

nlohmann::json to_json(const PerimeterIdentityReport& r);
nlohmann::json to_json(const CoulombInequalityReport& r);
nlohmann::json to_json(const LowerSimplexReport& r);

}  // namespace ldrop
