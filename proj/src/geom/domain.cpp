#include "ldrop/geom/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ldrop {

namespace {

Face make_face(std::vector<Vec3> verts, const Vec3& inside_point) {
  Vec3 n = (verts[1] - verts[0]).cross(verts[2] - verts[0]);
  if (n.dot(verts[0] - inside_point) < 0) {
    std::reverse(verts.begin() + 1, verts.end());
    n = -n;
  }
  Face f;
  f.normal = n.normalized();
  f.offset = f.normal.dot(verts[0]);
  f.vertices = std::move(verts);
  return f;
}

Polyhedron transformed(const Polyhedron& p, double s, const Vec3& shift) {
  Polyhedron out = p;
  for (auto& f : out.faces) {
    for (auto& v : f.vertices) v = s * v + shift;
    f.offset = f.normal.dot(f.vertices[0]);
  }
  return out;
}

}  // namespace

Domain scaled_translate(const Domain& base, double scale, const Vec3& shift) {
  return ScaledTranslate{std::make_shared<const Domain>(base), scale, shift};
}

Tetrahedron regular_tetrahedron(double volume) {
  // vertices s(±1,±1,±1) with an even number of minus signs: volume 8 s^3 / 3
  const double s = std::cbrt(3.0 * volume / 8.0);
  Tetrahedron t;
  t.vertices = {Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)};
  return t;
}

double Face::area() const {
  Vec3 acc = Vec3::Zero();
  for (std::size_t i = 1; i + 1 < vertices.size(); ++i)
    acc += (vertices[i] - vertices[0]).cross(vertices[i + 1] - vertices[0]);
  return 0.5 * acc.norm();
}

double Polyhedron::volume() const {
  double v = 0.0;
  for (const auto& f : faces) v += f.offset * f.area();
  return v / 3.0;
}

double Polyhedron::surface_area() const {
  double a = 0.0;
  for (const auto& f : faces) a += f.area();
  return a;
}

bool Polyhedron::contains(const Vec3& x, double slack) const {
  for (const auto& f : faces)
    if (f.normal.dot(x) - f.offset > slack) return false;
  return true;
}

Polyhedron cube_polyhedron(const Cube& c) {
  const double a = c.side / 2.0;
  auto corner = [&](int i, int j, int k) {
    return Vec3(c.center.x() + (i ? a : -a), c.center.y() + (j ? a : -a), c.center.z() + (k ? a : -a));
  };
  Polyhedron p;
  p.faces.push_back(make_face({corner(0, 0, 0), corner(0, 1, 0), corner(0, 1, 1), corner(0, 0, 1)}, c.center));
  p.faces.push_back(make_face({corner(1, 0, 0), corner(1, 1, 0), corner(1, 1, 1), corner(1, 0, 1)}, c.center));
  p.faces.push_back(make_face({corner(0, 0, 0), corner(1, 0, 0), corner(1, 0, 1), corner(0, 0, 1)}, c.center));
  p.faces.push_back(make_face({corner(0, 1, 0), corner(1, 1, 0), corner(1, 1, 1), corner(0, 1, 1)}, c.center));
  p.faces.push_back(make_face({corner(0, 0, 0), corner(1, 0, 0), corner(1, 1, 0), corner(0, 1, 0)}, c.center));
  p.faces.push_back(make_face({corner(0, 0, 1), corner(1, 0, 1), corner(1, 1, 1), corner(0, 1, 1)}, c.center));
  return p;
}

Polyhedron tetra_polyhedron(const Tetrahedron& t) {
  const auto& v = t.vertices;
  const Vec3 centroid = (v[0] + v[1] + v[2] + v[3]) / 4.0;
  Polyhedron p;
  p.faces.push_back(make_face({v[1], v[2], v[3]}, centroid));
  p.faces.push_back(make_face({v[0], v[2], v[3]}, centroid));
  p.faces.push_back(make_face({v[0], v[1], v[3]}, centroid));
  p.faces.push_back(make_face({v[0], v[1], v[2]}, centroid));
  return p;
}

std::optional<Ball> as_ball(const Domain& d) {
  if (const auto* b = std::get_if<Ball>(&d)) return *b;
  if (const auto* st = std::get_if<ScaledTranslate>(&d)) {
    auto inner = as_ball(*st->base);
    if (!inner) return std::nullopt;
    return Ball{st->scale * inner->radius, st->scale * inner->center + st->shift};
  }
  return std::nullopt;
}

std::optional<Polyhedron> as_polyhedron(const Domain& d) {
  if (const auto* c = std::get_if<Cube>(&d)) return cube_polyhedron(*c);
  if (const auto* t = std::get_if<Tetrahedron>(&d)) return tetra_polyhedron(*t);
  if (const auto* st = std::get_if<ScaledTranslate>(&d)) {
    auto inner = as_polyhedron(*st->base);
    if (!inner) return std::nullopt;
    return transformed(*inner, st->scale, st->shift);
  }
  return std::nullopt;
}

std::optional<Tetrahedron> as_tetrahedron(const Domain& d) {
  if (const auto* t = std::get_if<Tetrahedron>(&d)) return *t;
  if (const auto* st = std::get_if<ScaledTranslate>(&d)) {
    auto inner = as_tetrahedron(*st->base);
    if (!inner) return std::nullopt;
    for (auto& v : inner->vertices) v = st->scale * v + st->shift;
    return inner;
  }
  return std::nullopt;
}

void validate(const Domain& d) {
  std::visit(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cube>) {
          if (!(x.side > 0.0)) throw ArgumentError("cube side must be positive");
        } else if constexpr (std::is_same_v<T, Ball>) {
          if (!(x.radius > 0.0)) throw ArgumentError("ball radius must be positive");
        } else if constexpr (std::is_same_v<T, Tetrahedron>) {
          const auto& v = x.vertices;
          const double vol = std::abs((v[1] - v[0]).dot((v[2] - v[0]).cross(v[3] - v[0]))) / 6.0;
          double edge = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) edge = std::max(edge, (v[i] - v[j]).norm());
          if (!(vol > 1e-12 * edge * edge * edge)) throw ArgumentError("tetrahedron vertices are coplanar");
        } else {
          if (!x.base) throw ArgumentError("scaled domain without base");
          if (!(x.scale > 0.0)) throw ArgumentError("scale must be positive");
          validate(*x.base);
        }
      },
      d);
}

DomainMeasure domain_measure(const Domain& d) {
  validate(d);
  return std::visit(
      [](const auto& x) -> DomainMeasure {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cube>) {
          return {x.side * x.side * x.side, x.side * std::sqrt(3.0)};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {4.0 * kPi / 3.0 * x.radius * x.radius * x.radius, 2.0 * x.radius};
        } else if constexpr (std::is_same_v<T, Tetrahedron>) {
          const auto& v = x.vertices;
          double diam = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) diam = std::max(diam, (v[i] - v[j]).norm());
          return {std::abs((v[1] - v[0]).dot((v[2] - v[0]).cross(v[3] - v[0]))) / 6.0, diam};
        } else {
          auto m = domain_measure(*x.base);
          return {m.volume * x.scale * x.scale * x.scale, m.diameter * x.scale};
        }
      },
      d);
}

bool contains(const Domain& d, const Vec3& x) {
  if (auto b = as_ball(d)) return (x - b->center).norm() <= b->radius;
  auto p = as_polyhedron(d);
  return p->contains(x, 1e-14 * domain_measure(d).diameter);
}

bool contains_strictly(const Domain& d, const Vec3& x) {
  if (auto b = as_ball(d)) return (x - b->center).norm() < b->radius;
  auto p = as_polyhedron(d);
  for (const auto& f : p->faces)
    if (!(f.normal.dot(x) - f.offset < 0.0)) return false;
  return true;
}

Insphere insphere(const Domain& d) {
  if (auto b = as_ball(d)) return {b->center, b->radius};
  if (const auto* c = std::get_if<Cube>(&d)) return {c->center, c->side / 2.0};
  if (auto t = as_tetrahedron(d)) {
    auto p = tetra_polyhedron(*t);
    // face i of tetra_polyhedron is opposite vertex i
    Vec3 num = Vec3::Zero();
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double a = p.faces[i].area();
      num += a * t->vertices[i];
      total += a;
    }
    return {num / total, 3.0 * p.volume() / total};
  }
  const auto& st = std::get<ScaledTranslate>(d);
  auto in = insphere(*st.base);
  return {st.scale * in.center + st.shift, st.scale * in.radius};
}

std::pair<Vec3, Vec3> bounding_box(const Domain& d) {
  if (auto b = as_ball(d)) {
    const Vec3 r = Vec3::Constant(b->radius);
    return {b->center - r, b->center + r};
  }
  auto p = as_polyhedron(d);
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const auto& f : p->faces)
    for (const auto& v : f.vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  return {lo, hi};
}

}  // namespace ldrop
