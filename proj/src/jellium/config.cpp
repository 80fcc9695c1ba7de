#include "ldrop/jellium/config.hpp"

#include <cmath>

#include "ldrop/geom/serialize.hpp"

namespace ldrop {

Vec3 PointConfiguration::centroid() const {
  Vec3 c = Vec3::Zero();
  for (const auto& p : x) c += p;
  return x.empty() ? c : Vec3(c / double(x.size()));
}

JelliumEnergyReport finish_report(JelliumEnergyReport r, std::size_t n) {
  r.total = r.pair + r.point_background + r.background_background + r.madelung_self;
  r.per_particle = n ? r.total / double(n) : 0.0;
  return r;
}

PointConfiguration random_periodic_configuration(std::size_t n, double side, Rng& rng) {
  PointConfiguration c;
  c.x.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    c.x.emplace_back(rng.uniform(0, side), rng.uniform(0, side), rng.uniform(0, side));
  return c;
}

PointConfiguration cubic_crystal(LatticeKind kind, int k, double side) {
  if (k < 1 || !(side > 0)) throw ArgumentError("cubic_crystal: need k >= 1 and side > 0");
  std::vector<Vec3> motif{Vec3(0, 0, 0)};
  switch (kind) {
    case LatticeKind::SC:
      break;
    case LatticeKind::BCC:
      motif.emplace_back(0.5, 0.5, 0.5);
      break;
    case LatticeKind::FCC:
      motif.emplace_back(0, 0.5, 0.5);
      motif.emplace_back(0.5, 0, 0.5);
      motif.emplace_back(0.5, 0.5, 0);
      break;
    default:
      throw ArgumentError("cubic_crystal: kind must be sc, bcc or fcc");
  }
  const double a = side / k;
  PointConfiguration c;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        for (const auto& m : motif) c.x.push_back(a * (Vec3(i, j, l) + m));
  return c;
}

bool crystal_for_count(std::size_t n, LatticeKind* kind, int* k) {
  auto cube_root = [](std::size_t m) -> int {
    const int r = int(std::lround(std::cbrt(double(m))));
    return std::size_t(r) * r * r == m ? r : 0;
  };
  const std::pair<LatticeKind, std::size_t> order[] = {
      {LatticeKind::BCC, 2}, {LatticeKind::FCC, 4}, {LatticeKind::SC, 1}};
  for (const auto& [kd, per] : order) {
    if (n == 0 || n % per) continue;
    if (int r = cube_root(n / per)) {
      *kind = kd;
      *k = r;
      return true;
    }
  }
  return false;
}

void recenter(PointConfiguration& c) {
  const Vec3 m = c.centroid();
  for (auto& p : c.x) p -= m;
}

nlohmann::json to_json(const PointConfiguration& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : c.x) pts.push_back(to_json(p));
  return {{"charge", c.q}, {"positions", pts}};
}

PointConfiguration configuration_from_json(const nlohmann::json& j) {
  PointConfiguration c;
  c.q = j.value("charge", 1.0);
  for (const auto& p : j.at("positions")) c.x.push_back(vec3_from_json(p));
  return c;
}

nlohmann::json to_json(const JelliumEnergyReport& r) {
  return {{"pair", r.pair},
          {"point_background", r.point_background},
          {"background_background", r.background_background},
          {"madelung_self", r.madelung_self},
          {"total", r.total},
          {"per_particle", r.per_particle}};
}

}  // namespace ldrop
