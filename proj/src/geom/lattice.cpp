#include "ldrop/geom/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace ldrop {

std::string to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::SC: return "sc";
    case LatticeKind::BCC: return "bcc";
    case LatticeKind::FCC: return "fcc";
    case LatticeKind::Custom: return "custom";
  }
  return "custom";
}

LatticeKind parse_lattice_kind(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "sc") return LatticeKind::SC;
  if (t == "bcc") return LatticeKind::BCC;
  if (t == "fcc") return LatticeKind::FCC;
  if (t == "custom") return LatticeKind::Custom;
  throw ArgumentError("unknown lattice kind: " + s);
}

Lattice make_lattice(LatticeKind kind, double density) {
  if (!(density > 0.0) || !std::isfinite(density)) throw ArgumentError("lattice density must be positive");
  Lattice L;
  L.kind = kind;
  L.density = density;
  switch (kind) {
    case LatticeKind::SC: {
      const double a = std::cbrt(1.0 / density);
      L.basis = a * Mat3::Identity();
      break;
    }
    case LatticeKind::BCC: {
      const double a = std::cbrt(2.0 / density);
      L.basis << -1, 1, 1, 1, -1, 1, 1, 1, -1;
      L.basis *= a / 2.0;
      break;
    }
    case LatticeKind::FCC: {
      const double a = std::cbrt(4.0 / density);
      L.basis << 0, 1, 1, 1, 0, 1, 1, 1, 0;
      L.basis *= a / 2.0;
      break;
    }
    case LatticeKind::Custom:
      throw ArgumentError("custom lattices are built from a basis");
  }
  return L;
}

Lattice custom_lattice(const Mat3& basis) {
  const double det = basis.determinant();
  if (!(std::abs(det) > 1e-300) || !std::isfinite(det)) throw ArgumentError("singular lattice basis");
  Lattice L;
  L.basis = basis;
  if (det < 0) L.basis.row(2) *= -1.0;
  L.density = 1.0 / std::abs(det);
  L.kind = LatticeKind::Custom;
  return L;
}

Lattice dual_lattice(const Lattice& L) {
  const double det = L.basis.determinant();
  if (!(std::abs(det) > 1e-300)) throw ArgumentError("singular lattice basis");
  Lattice D;
  D.basis = L.basis.inverse().transpose();
  if (D.basis.determinant() < 0) D.basis.row(2) *= -1.0;
  D.density = 1.0 / std::abs(D.basis.determinant());
  switch (L.kind) {
    case LatticeKind::SC: D.kind = LatticeKind::SC; break;
    case LatticeKind::BCC: D.kind = LatticeKind::FCC; break;
    case LatticeKind::FCC: D.kind = LatticeKind::BCC; break;
    case LatticeKind::Custom: D.kind = LatticeKind::Custom; break;
  }
  return D;
}

bool same_lattice(const Lattice& a, const Lattice& b, double tol) {
  auto integral = [tol](const Mat3& m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (std::abs(m(i, j) - std::round(m(i, j))) > tol) return false;
    return true;
  };
  // rows of a = C * rows of b with C integral and unimodular
  const Mat3 c1 = a.basis * b.basis.inverse();
  const Mat3 c2 = b.basis * a.basis.inverse();
  return integral(c1) && integral(c2);
}

Lattice scaled(const Lattice& L, double factor) {
  Lattice out = L;
  out.basis *= factor;
  out.density = L.density / (factor * factor * factor);
  return out;
}

double conventional_side(const Lattice& L) {
  switch (L.kind) {
    case LatticeKind::SC: return std::cbrt(1.0 / L.density);
    case LatticeKind::BCC: return std::cbrt(2.0 / L.density);
    case LatticeKind::FCC: return std::cbrt(4.0 / L.density);
    case LatticeKind::Custom: break;
  }
  throw ArgumentError("conventional cell undefined for custom lattices");
}

std::vector<Vec3> lattice_vectors_within(const Lattice& L, double radius) {
  // v = n^T B, so n = B^{-T} v and |n_i| <= radius * |column i of B^{-1}|
  const Mat3 inv = L.basis.inverse();
  std::array<long, 3> bound{};
  for (int i = 0; i < 3; ++i) bound[i] = static_cast<long>(std::ceil(radius * inv.col(i).norm()));
  std::vector<Vec3> out;
  const double r2 = radius * radius;
  for (long a = -bound[0]; a <= bound[0]; ++a)
    for (long b = -bound[1]; b <= bound[1]; ++b)
      for (long c = -bound[2]; c <= bound[2]; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        const Vec3 v = double(a) * L.basis.row(0).transpose() + double(b) * L.basis.row(1).transpose() +
                       double(c) * L.basis.row(2).transpose();
        if (v.squaredNorm() <= r2) out.push_back(v);
      }
  return out;
}

}  // namespace ldrop
