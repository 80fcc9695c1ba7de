#pragma once

#include <string>
#include <vector>

#include "ldrop/core/types.hpp"

namespace ldrop {

enum class LatticeKind { SC, BCC, FCC, Custom };

std::string to_string(LatticeKind k);
LatticeKind parse_lattice_kind(const std::string& s);

// Bravais lattice; rows of `basis` are the primitive vectors.
struct Lattice {
  Mat3 basis = Mat3::Identity();
  double density = 1.0;  // points per unit volume = 1 / covolume
  LatticeKind kind = LatticeKind::SC;

  double covolume() const { return std::abs(basis.determinant()); }
  Mat3 gram() const { return basis * basis.transpose(); }
};

Lattice make_lattice(LatticeKind kind, double density);
Lattice custom_lattice(const Mat3& basis);

// Covolume-reciprocal dual: basis = inverse transpose (no 2*pi).
Lattice dual_lattice(const Lattice& L);

// Same lattice up to change of basis: each basis of one is an integer
// combination of the other's, within tol on the coefficients.
bool same_lattice(const Lattice& a, const Lattice& b, double tol = 1e-9);

Lattice scaled(const Lattice& L, double factor);

// Conventional cube side for SC/BCC/FCC at the lattice's density.
double conventional_side(const Lattice& L);

// Nonzero lattice vectors with |v| <= radius.
std::vector<Vec3> lattice_vectors_within(const Lattice& L, double radius);

}  // namespace ldrop
