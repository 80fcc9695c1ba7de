#pragma once

#include <array>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "ldrop/core/types.hpp"

namespace ldrop {

struct Cube {
  double side = 1.0;
  Vec3 center = Vec3::Zero();
};

struct Ball {
  double radius = 1.0;
  Vec3 center = Vec3::Zero();
};

struct Tetrahedron {
  std::array<Vec3, 4> vertices;
};

struct ScaledTranslate;
using Domain = std::variant<Cube, Ball, Tetrahedron, ScaledTranslate>;

// x -> scale * x + shift applied to base
struct ScaledTranslate {
  std::shared_ptr<const Domain> base;
  double scale = 1.0;
  Vec3 shift = Vec3::Zero();
};

Domain scaled_translate(const Domain& base, double scale, const Vec3& shift = Vec3::Zero());

// Regular tetrahedron of the given volume centered at the origin.
Tetrahedron regular_tetrahedron(double volume = 1.0);

struct DomainMeasure {
  double volume;
  double diameter;
};

DomainMeasure domain_measure(const Domain& d);
void validate(const Domain& d);  // throws ArgumentError on degenerate input

bool contains(const Domain& d, const Vec3& x);          // closed set
bool contains_strictly(const Domain& d, const Vec3& x);  // open set

// Planar convex face; vertices counterclockwise seen from outside.
struct Face {
  std::vector<Vec3> vertices;
  Vec3 normal;  // outward unit normal
  double offset;  // normal . y for y on the face
  double area() const;
};

struct Polyhedron {
  std::vector<Face> faces;
  double volume() const;
  double surface_area() const;
  bool contains(const Vec3& x, double slack = 0.0) const;  // convex only
};

Polyhedron cube_polyhedron(const Cube& c);
Polyhedron tetra_polyhedron(const Tetrahedron& t);

// Domains reduce to either a ball or a convex polyhedron once scalings are applied.
std::optional<Ball> as_ball(const Domain& d);
std::optional<Polyhedron> as_polyhedron(const Domain& d);

// Tetrahedron with a ScaledTranslate resolved (nullopt if not a tetrahedron).
std::optional<Tetrahedron> as_tetrahedron(const Domain& d);

// Radius and center of the inscribed sphere of a tangential convex body (ball,
// cube or tetrahedron). Shrinking the body by r about the center gives the set
// of centers of balls of radius r inside it.
struct Insphere {
  Vec3 center;
  double radius;
};
Insphere insphere(const Domain& d);

// Axis-aligned bounding box.
std::pair<Vec3, Vec3> bounding_box(const Domain& d);

}  // namespace ldrop
