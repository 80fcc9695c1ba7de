#include "ldrop/coulomb/potentials.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "ldrop/core/quadrature.hpp"

namespace ldrop {

double potential_ball(double Q, double R, double r) {
  if (!(R > 0.0)) throw ArgumentError("ball radius must be positive");
  if (!(Q > 0.0)) throw ArgumentError("ball charge must be positive");
  r = std::abs(r);
  if (r >= R) return Q / r;
  return Q * (3.0 * R * R - r * r) / (2.0 * R * R * R);
}

namespace {

// log(u + r) with s2 = r^2 - u^2, stable for negative u
double log_sum(double u, double r, double s2) {
  if (u >= 0.0) return std::log(u + r);
  return std::log(s2 / (r - u));
}

// antiderivative with d^3 F / du dv dw = 1 / sqrt(u^2 + v^2 + w^2)
double box_primitive(double u, double v, double w) {
  const double u2 = u * u, v2 = v * v, w2 = w * w;
  const double r = std::sqrt(u2 + v2 + w2);
  if (r == 0.0) return 0.0;
  double f = 0.0;
  if (v != 0.0 && w != 0.0) f += v * w * log_sum(u, r, v2 + w2);
  if (u != 0.0 && w != 0.0) f += u * w * log_sum(v, r, u2 + w2);
  if (u != 0.0 && v != 0.0) f += u * v * log_sum(w, r, u2 + v2);
  if (u != 0.0) f -= 0.5 * u2 * std::atan(v * w / (u * r));
  if (v != 0.0) f -= 0.5 * v2 * std::atan(u * w / (v * r));
  if (w != 0.0) f -= 0.5 * w2 * std::atan(u * v / (w * r));
  return f;
}

}  // namespace

double potential_box(const Vec3& lo, const Vec3& hi, const Vec3& x) {
  double total = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        const double u = (i ? hi.x() : lo.x()) - x.x();
        const double v = (j ? hi.y() : lo.y()) - x.y();
        const double w = (k ? hi.z() : lo.z()) - x.z();
        const double sign = ((i + j + k) % 2 == 1) ? -1.0 : 1.0;
        // upper corners (1,1,1) enter with +, each lower bound flips the sign
        total += -sign * box_primitive(u, v, w);
      }
  return total;
}

double potential_cube(double side, const Vec3& x) {
  if (!(side > 0.0)) throw ArgumentError("cube side must be positive");
  const Vec3 h = Vec3::Constant(side / 2.0);
  return potential_box(-h, h, x);
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// sum over edges of sign(h) int G(|h| sec t) dt, the integral over the face of
// g(|y - x|) written in polar coordinates about the foot point of x
template <class Prim>
double face_polar(const Face& f, const Vec3& x, double tol, Prim prim) {
  const Vec3& n = f.normal;
  const double d = n.dot(x) - f.offset;
  const Vec3 p = x - d * n;
  const double ad = std::abs(d);
  const std::size_t m = f.vertices.size();
  double scale = 0.0;
  for (const auto& v : f.vertices) scale = std::max(scale, (v - p).norm());
  double total = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    const Vec3& a = f.vertices[e];
    const Vec3& b = f.vertices[(e + 1) % m];
    const Vec3 u = (b - a).normalized();
    const Vec3 out = u.cross(n);
    const double h = (a - p).dot(out);
    if (std::abs(h) <= 1e-300) continue;
    const double ah = std::abs(h);
    // theta = gd(w), so |h| sec(theta) = |h| cosh(w) and dtheta = dw / cosh(w);
    // stays well conditioned when the foot point sits next to the edge line
    const double w0 = std::asinh((a - p).dot(u) / ah);
    const double w1 = std::asinh((b - p).dot(u) / ah);
    double err = 0.0;
    const double val = quad::adaptive(
        [&](double w) {
          const double c = std::cosh(w);
          return prim(ah * c, ad) / c;
        },
        w0, w1, tol, &err);
    const double ref = std::max(std::abs(val), prim(scale + ad, ad) * std::abs(std::atan(std::sinh(w1)) - std::atan(std::sinh(w0))));
    if (!(err <= 1e3 * tol * ref))
      throw NumericError("face quadrature did not converge: achieved error " + sci(err) +
                         " on edge integral " + sci(val));
    total += (h > 0 ? val : -val);
  }
  return total;
}

}  // namespace

double face_inverse_distance(const Face& f, const Vec3& x, double) {
  // same polar split, but the edge integral int (r - d) dtheta has the antiderivative
  // h log(s + r) + d atan(d s / (h r)) - d atan(s / h), s the coordinate along the edge
  const Vec3& n = f.normal;
  const double d = n.dot(x) - f.offset;
  const Vec3 p = x - d * n;
  const double ad = std::abs(d);
  const std::size_t m = f.vertices.size();
  double total = 0.0;
  for (std::size_t e = 0; e < m; ++e) {
    const Vec3& a = f.vertices[e];
    const Vec3& b = f.vertices[(e + 1) % m];
    const Vec3 u = (b - a).normalized();
    const double h = (a - p).dot(u.cross(n));
    const double ah = std::abs(h);
    if (ah == 0.0) continue;
    const double perp2 = h * h + d * d;
    auto prim = [&](double s) {
      const double r = std::sqrt(perp2 + s * s);
      const double lg = s >= 0.0 ? std::log(s + r) : std::log(perp2 / (r - s));
      return ah * lg + ad * (std::atan(ad * s / (ah * r)) - std::atan(s / ah));
    };
    const double v = prim((b - p).dot(u)) - prim((a - p).dot(u));
    total += h > 0 ? v : -v;
  }
  return total;
}

double face_inverse_distance_quadrature(const Face& f, const Vec3& x, double tol) {
  // int_0^R rho / sqrt(rho^2 + d^2) drho
  return face_polar(f, x, tol, [](double R, double d) {
    return R * R / (std::sqrt(R * R + d * d) + d);
  });
}

double face_distance(const Face& f, const Vec3& x, double tol) {
  // int_0^R rho sqrt(rho^2 + d^2) drho = (a^3 - d^3)/3 with a = sqrt(R^2 + d^2)
  return face_polar(f, x, tol, [](double R, double d) {
    const double a = std::sqrt(R * R + d * d);
    return R * R * (a * a + a * d + d * d) / (3.0 * (a + d));
  });
}

PotentialValue potential_polyhedron(const Polyhedron& p, const Vec3& x, double tol) {
  PotentialValue out{0.0, Vec3::Zero()};
  for (const auto& f : p.faces) {
    const double dist = f.offset - f.normal.dot(x);
    const double fi = face_inverse_distance(f, x, tol);
    out.value += 0.5 * dist * fi;
    out.gradient -= fi * f.normal;
  }
  return out;
}

double potential_tetra(const Tetrahedron& t, const Vec3& x, double tol) {
  validate(Domain{t});
  return potential_polyhedron(tetra_polyhedron(t), x, tol).value;
}

PotentialValue domain_potential_with_gradient(const Domain& d, const Vec3& x, double tol) {
  if (auto b = as_ball(d)) {
    const double Q = 4.0 * kPi / 3.0 * b->radius * b->radius * b->radius;
    const Vec3 y = x - b->center;
    const double r = y.norm();
    const double R = b->radius;
    if (r >= R) return {Q / r, -Q * y / (r * r * r)};
    return {potential_ball(Q, R, r), -Q * y / (R * R * R)};
  }
  if (const auto* c = std::get_if<Cube>(&d)) {
    auto pv = potential_polyhedron(cube_polyhedron(*c), x, tol);
    pv.value = potential_cube(c->side, x - c->center);
    return pv;
  }
  return potential_polyhedron(*as_polyhedron(d), x, tol);
}

double domain_potential(const Domain& d, const Vec3& x, double tol) {
  if (auto b = as_ball(d)) {
    const double Q = 4.0 * kPi / 3.0 * b->radius * b->radius * b->radius;
    return potential_ball(Q, b->radius, (x - b->center).norm());
  }
  if (const auto* c = std::get_if<Cube>(&d)) return potential_cube(c->side, x - c->center);
  return potential_polyhedron(*as_polyhedron(d), x, tol).value;
}

}  // namespace ldrop
