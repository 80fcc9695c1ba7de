#include "ldrop/droplet/energy.hpp"

#include <cmath>
#include <string>

#include "ldrop/coulomb/grid.hpp"
#include "ldrop/coulomb/pair.hpp"
#include "ldrop/coulomb/potentials.hpp"
#include "ldrop/droplet/constants.hpp"
#include "ldrop/geom/serialize.hpp"

namespace ldrop {

namespace {

double ball_charge(double R) { return 4.0 * kPi / 3.0 * R * R * R; }

bool ball_inside(const Ball& b, const Domain& lambda) {
  const double slack = 1e-12 * (1.0 + b.radius);
  if (auto L = as_ball(lambda)) return (b.center - L->center).norm() + b.radius <= L->radius + slack;
  const auto p = as_polyhedron(lambda);
  for (const auto& f : p->faces)
    if (f.normal.dot(b.center) - f.offset > -b.radius + slack) return false;
  return true;
}

LiquidDropBreakdown finish(LiquidDropBreakdown b, double rho, double lambda_volume) {
  b.total = b.perimeter + b.droplet_droplet + b.droplet_background + b.background_background;
  b.neutrality_defect = b.volume - rho * lambda_volume;
  return b;
}

void check_rho(double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw ArgumentError("background density must lie in [0, 1]");
}

}  // namespace

LiquidDropBreakdown liquid_drop_energy(const BallUnion& omega, const Domain& lambda, double rho, double tol) {
  check_rho(rho);
  validate(lambda);
  const auto& balls = omega.balls;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (!(balls[i].radius > 0)) throw ArgumentError("ball " + std::to_string(i) + " has non-positive radius");
    if (!ball_inside(balls[i], lambda)) throw ArgumentError("ball " + std::to_string(i) + " is not inside the container");
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      if ((balls[i].center - balls[j].center).norm() < balls[i].radius + balls[j].radius)
        throw ArgumentError("balls " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
  }
  LiquidDropBreakdown b;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const double R = balls[i].radius, Q = ball_charge(R);
    b.perimeter += 4.0 * kPi * R * R;
    b.volume += Q;
    b.droplet_droplet += 0.6 * Q * Q / R;
    for (std::size_t j = i + 1; j < balls.size(); ++j)
      b.droplet_droplet += Q * ball_charge(balls[j].radius) / (balls[i].center - balls[j].center).norm();
    if (rho > 0)
      b.droplet_background -= rho * Q * (domain_potential(lambda, balls[i].center) - 0.4 * kPi * R * R);
  }
  if (rho > 0) b.background_background = 0.5 * rho * rho * domain_pair_coulomb(lambda, lambda, tol);
  return finish(b, rho, domain_measure(lambda).volume);
}

LiquidDropBreakdown liquid_drop_energy(const VoxelSet& omega, const Domain& lambda, double rho,
                                       PerimeterMethod method) {
  check_rho(rho);
  validate(lambda);
  const double h = omega.box.h;
  // common box covering Lambda and Omega's box, on the same global grid
  auto [lo, hi] = bounding_box(lambda);
  for (int d = 0; d < 3; ++d) {
    lo[d] = std::min(lo[d], h * double(omega.box.origin[d]));
    hi[d] = std::max(hi[d], h * double(omega.box.origin[d] + omega.box.dims[d]));
  }
  const GridBox box = grid_box_covering(h, lo, hi);
  const VoxelSet lam = voxelize(lambda, box);
  const VoxelSet om = embed(omega, box);
  for (std::size_t i = 0; i < om.occ.size(); ++i)
    if (om.occ[i] && !lam.occ[i]) throw ArgumentError("voxel set is not inside the container");
  LiquidDropBreakdown b;
  b.volume = om.measure();
  b.perimeter = perimeter_estimate(om, method);
  const ChargeGrid fo = ChargeGrid::from_voxels(om), fl = ChargeGrid::from_voxels(lam);
  b.droplet_droplet = freespace_coulomb_energy(fo);
  if (rho > 0) {
    b.droplet_background = -2.0 * rho * freespace_coulomb_cross(fo, fl);
    b.background_background = rho * rho * freespace_coulomb_energy(fl);
  }
  return finish(b, rho, lam.measure());
}

MassBoundReport mass_bound_check(const BallUnion& omega, const Domain& lambda, double rho) {
  MassBoundReport r;
  const auto e = liquid_drop_energy(omega, lambda, rho);
  const double mu = ball_optimum().mu_star;
  const double diam = domain_measure(lambda).diameter;
  r.energy = e.total;
  r.volume = e.volume;
  r.bound = 8.0 + 16.0 * kPi * rho * diam * diam * diam;
  r.hypothesis_met = e.total <= mu * e.volume * (1.0 + 1e-12) || e.volume == 0.0;
  r.bound_holds = e.volume <= r.bound;
  r.pass = !r.hypothesis_met || r.bound_holds;
  r.status = !r.hypothesis_met ? "hypothesis not met" : (r.bound_holds ? "pass" : "fail");
  return r;
}

nlohmann::json to_json(const LiquidDropBreakdown& b) {
  return {{"perimeter", b.perimeter},
          {"droplet_droplet", b.droplet_droplet},
          {"droplet_background", b.droplet_background},
          {"background_background", b.background_background},
          {"total", b.total},
          {"volume", b.volume},
          {"neutrality_defect", b.neutrality_defect}};
}

nlohmann::json to_json(const MassBoundReport& r) {
  return {{"status", r.status},     {"hypothesis_met", r.hypothesis_met}, {"bound_holds", r.bound_holds},
          {"energy", r.energy},     {"volume", r.volume},                 {"bound", r.bound}};
}

}  // namespace ldrop
