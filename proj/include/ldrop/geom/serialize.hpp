#pragma once

#include "json.hpp"
#include "ldrop/geom/domain.hpp"
#include "ldrop/geom/lattice.hpp"
#include "ldrop/geom/voxel.hpp"

// JSON schema:
//   lattice: {"kind": "bcc", "density": 1.0, "basis": [[..],[..],[..]]}
//   domain:  {"type": "cube", "side": s, "center": [x,y,z]}
//            {"type": "ball", "radius": r, "center": [x,y,z]}
//            {"type": "tetrahedron", "vertices": [[..] x4]}
//            {"type": "scaled", "scale": s, "shift": [x,y,z], "base": <domain>}
//   ball union: {"balls": [{"radius": r, "center": [..]}, ...], "disjoint": bool}

namespace ldrop {

nlohmann::json to_json(const Vec3& v);
Vec3 vec3_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Lattice& L);
Lattice lattice_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Domain& d);
Domain domain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BallUnion& b);
BallUnion ball_union_from_json(const nlohmann::json& j);

}  // namespace ldrop
