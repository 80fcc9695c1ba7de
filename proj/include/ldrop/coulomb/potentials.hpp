#pragma once

#include "ldrop/core/types.hpp"
#include "ldrop/geom/domain.hpp"

namespace ldrop {

// Potential of a uniform ball of total charge Q at distance r from its center.
double potential_ball(double Q, double R, double r);

// Potential of the unit-density box [lo, hi] at x (closed form, logs and arctangents).
double potential_box(const Vec3& lo, const Vec3& hi, const Vec3& x);

// Potential of the unit-density cube of side l centered at the origin.
double potential_cube(double side, const Vec3& x);

// Integrals over one planar face, by polar coordinates about the projection of
// x; each edge leaves a one-dimensional angular integral. For 1/|y - x| that
// integral is done in closed form (tol unused); the quadrature variant is kept
// as an independent check.
double face_inverse_distance(const Face& f, const Vec3& x, double tol = 1e-12);  // int dA / |y - x|
double face_inverse_distance_quadrature(const Face& f, const Vec3& x, double tol = 1e-12);
double face_distance(const Face& f, const Vec3& x, double tol = 1e-12);          // int |y - x| dA

struct PotentialValue {
  double value;
  Vec3 gradient;
};

// Unit-density convex polyhedron, through int_V dy/|x-y| = 1/2 sum_f d_f int_f dA/|x-y|
// with d_f the signed distance from x to the plane of face f.
PotentialValue potential_polyhedron(const Polyhedron& p, const Vec3& x, double tol = 1e-12);

double potential_tetra(const Tetrahedron& t, const Vec3& x, double tol = 1e-12);

// int_D dy / |x - y| for any domain
double domain_potential(const Domain& d, const Vec3& x, double tol = 1e-12);
PotentialValue domain_potential_with_gradient(const Domain& d, const Vec3& x, double tol = 1e-12);

}  // namespace ldrop
