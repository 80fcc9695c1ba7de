#include "ldrop/geom/serialize.hpp"

namespace ldrop {

using nlohmann::json;

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ArgumentError("expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json to_json(const Lattice& L) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back(to_json(Vec3(L.basis.row(i).transpose())));
  return {{"kind", to_string(L.kind)}, {"density", L.density}, {"basis", rows}};
}

Lattice lattice_from_json(const json& j) {
  const auto kind = parse_lattice_kind(j.at("kind").get<std::string>());
  if (j.contains("basis")) {
    Mat3 b;
    for (int i = 0; i < 3; ++i) b.row(i) = vec3_from_json(j.at("basis")[i]).transpose();
    Lattice L = custom_lattice(b);
    L.kind = kind;
    return L;
  }
  return make_lattice(kind, j.at("density").get<double>());
}

json to_json(const Domain& d) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cube>) {
          return {{"type", "cube"}, {"side", x.side}, {"center", to_json(x.center)}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {{"type", "ball"}, {"radius", x.radius}, {"center", to_json(x.center)}};
        } else if constexpr (std::is_same_v<T, Tetrahedron>) {
          json v = json::array();
          for (const auto& p : x.vertices) v.push_back(to_json(p));
          return {{"type", "tetrahedron"}, {"vertices", v}};
        } else {
          return {{"type", "scaled"}, {"scale", x.scale}, {"shift", to_json(x.shift)}, {"base", to_json(*x.base)}};
        }
      },
      d);
}

Domain domain_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  Domain d;
  if (type == "cube") {
    d = Cube{j.at("side").get<double>(), j.contains("center") ? vec3_from_json(j["center"]) : Vec3::Zero()};
  } else if (type == "ball") {
    d = Ball{j.at("radius").get<double>(), j.contains("center") ? vec3_from_json(j["center"]) : Vec3::Zero()};
  } else if (type == "tetrahedron") {
    if (j.contains("vertices")) {
      Tetrahedron t;
      for (int i = 0; i < 4; ++i) t.vertices[i] = vec3_from_json(j["vertices"].at(i));
      d = t;
    } else {
      d = regular_tetrahedron(j.value("volume", 1.0));
    }
  } else if (type == "scaled") {
    d = scaled_translate(domain_from_json(j.at("base")), j.at("scale").get<double>(),
                         j.contains("shift") ? vec3_from_json(j["shift"]) : Vec3::Zero());
  } else {
    throw ArgumentError("unknown domain type: " + type);
  }
  validate(d);
  return d;
}

json to_json(const BallUnion& b) {
  json balls = json::array();
  for (const auto& x : b.balls) balls.push_back({{"radius", x.radius}, {"center", to_json(x.center)}});
  return {{"balls", balls}, {"disjoint", b.disjoint}};
}

BallUnion ball_union_from_json(const json& j) {
  std::vector<Ball> balls;
  for (const auto& x : j.at("balls")) balls.push_back(Ball{x.at("radius").get<double>(), vec3_from_json(x.at("center"))});
  return make_ball_union(std::move(balls));
}

}  // namespace ldrop
