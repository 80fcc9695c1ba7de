#pragma once

#include "ldrop/geom/domain.hpp"

namespace ldrop {

// Un-halved double integral of dx dy / |x - y| over D1 x D2.
// Ball pairs use Newton's theorem; polyhedra use
//   -1/2 sum_{i,j} (n_i . n_j) int_{F_i} int_{F_j} |x - y|,
// obtained by applying the divergence theorem in both variables.
double domain_pair_coulomb(const Domain& a, const Domain& b, double tol = 1e-10);

double polyhedron_pair_coulomb(const Polyhedron& a, const Polyhedron& b, double tol = 1e-10);

// int_{B} Phi_D over a ball, for the straddling case (spherical product quadrature)
double ball_domain_coulomb(const Ball& b, const Domain& d, double tol = 1e-8);

// Double integral over the unit cubes [0,1]^3 and [0,1]^3 + o for an integer offset.
double unit_cube_pair(int ox, int oy, int oz);

}  // namespace ldrop
