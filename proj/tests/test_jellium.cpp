#include <cmath>

#include "doctest.h"
#include "ldrop/core/parallel.hpp"
#include "ldrop/core/rng.hpp"
#include "ldrop/coulomb/ewald.hpp"
#include "ldrop/coulomb/zeta.hpp"
#include "ldrop/geom/lattice.hpp"
#include "ldrop/jellium/extrapolate.hpp"
#include "ldrop/jellium/finite.hpp"
#include "ldrop/jellium/grand_canonical.hpp"
#include "ldrop/jellium/lbfgs.hpp"
#include "ldrop/jellium/optimize.hpp"
#include "ldrop/jellium/periodic.hpp"

using namespace ldrop;

TEST_SUITE("jellium") {

TEST_CASE("bcc crystal energy equals the lattice zeta value") {
  const double zeta = epstein_zeta(make_lattice(LatticeKind::BCC, 1.0), 1.0).value;
  for (int k : {1, 2, 3}) {
    const std::size_t n = 2 * k * k * k;
    const double side = std::cbrt(double(n));
    const auto cfg = cubic_crystal(LatticeKind::BCC, k, side);
    const auto r = periodic_energy(cfg, PeriodicKernel(side), true);
    CHECK(r.per_particle == doctest::Approx(zeta).epsilon(1e-10));
    // the fast evaluator agrees with the kernel sum
    PeriodicJellium ev(side, n);
    CHECK(ev.pair_energy(cfg.x) == doctest::Approx(r.pair).epsilon(1e-10));
  }
  // FCC at k = 2
  const auto fcc = cubic_crystal(LatticeKind::FCC, 2, std::cbrt(32.0));
  CHECK(periodic_energy(fcc, PeriodicKernel(std::cbrt(32.0)), true).per_particle ==
        doctest::Approx(-1.44414106).epsilon(1e-7));
}

TEST_CASE("periodic gradient matches finite differences") {
  Rng r(11);
  const double side = 2.0;
  const auto cfg = random_periodic_configuration(9, side, r);
  PeriodicJellium ev(side, cfg.size());
  std::vector<Vec3> g;
  ev.pair_energy(cfg.x, &g);
  const double h = 1e-6;
  for (std::size_t j = 0; j < cfg.size(); ++j)
    for (int a = 0; a < 3; ++a) {
      auto xp = cfg.x, xm = cfg.x;
      xp[j][a] += h;
      xm[j][a] -= h;
      const double fd = (ev.pair_energy(xp) - ev.pair_energy(xm)) / (2 * h);
      CHECK(g[j][a] == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  PointConfiguration bad;
  bad.x = {Vec3(0.1, 0.2, 0.3), Vec3(2.1, 0.2, 0.3)};
  CHECK_THROWS_AS(periodic_energy(bad, PeriodicKernel(2.0), false), PoleError);
}

TEST_CASE("finite jellium: one charge at the center of a ball") {
  const double R = 1.2, rho = 0.7, q = 1.5;
  FiniteJellium ev(Ball{R, Vec3::Zero()}, q, rho);
  const auto rep = ev.report({Vec3::Zero()});
  CHECK(rep.point_background == doctest::Approx(-q * rho * 2.0 * kPi * R * R).epsilon(1e-10));
  CHECK(rep.background_background == doctest::Approx(16.0 * kPi * kPi / 15.0 * rho * rho * std::pow(R, 5)).epsilon(1e-10));
  CHECK(rep.pair == 0.0);
  // the gradient vanishes at the center by symmetry and matches FD elsewhere
  std::vector<Vec3> g;
  const std::vector<Vec3> x{Vec3(0.3, -0.2, 0.1), Vec3(-0.4, 0.5, 0.2)};
  ev.energy(x, &g);
  for (int a = 0; a < 3; ++a) {
    auto xp = x, xm = x;
    xp[1][a] += 1e-6;
    xm[1][a] -= 1e-6;
    CHECK(g[1][a] == doctest::Approx((ev.energy(xp) - ev.energy(xm)) / 2e-6).epsilon(1e-5));
  }
}

TEST_CASE("lbfgs minimizes the rosenbrock function") {
  Objective f = [](const std::vector<double>& x, std::vector<double>& g) {
    const double a = 1.0 - x[0], b = x[1] - x[0] * x[0];
    g = {-2.0 * a - 400.0 * x[0] * b, 200.0 * b};
    return a * a + 100.0 * b * b;
  };
  const auto r = lbfgs_minimize(f, {-1.2, 1.0});
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("basin hopping is reproducible across thread counts") {
  BasinHopParams p;
  p.restarts = 3;
  p.hops = 2;
  p.seed = 17;
  set_thread_count(1);
  const auto a = basin_hop_periodic(8, 1.0, p);
  set_thread_count(4);
  const auto b = basin_hop_periodic(8, 1.0, p);
  set_thread_count(1);
  CHECK(a.best_energy == b.best_energy);
  CHECK(a.best_restart == b.best_restart);
  for (std::size_t j = 0; j < a.best.size(); ++j) CHECK(a.best.x[j] == b.best.x[j]);
  // never below the jellium lower bound
  CHECK(a.best_per_particle >= kJelliumLowerBound);
}

TEST_CASE("crystal seed reaches the bcc value") {
  BasinHopParams p;
  p.restarts = 1;
  p.hops = 0;
  p.crystal_seed = true;
  const auto r = basin_hop_periodic(16, 1.0, p);
  CHECK(r.best_per_particle == doctest::Approx(-1.44423075152697).epsilon(1e-8));
}

TEST_CASE("extrapolation in N^{-1/3}") {
  std::vector<SizeEnergy> d;
  for (double n : {16.0, 54.0, 128.0, 250.0}) d.push_back({n, -1.444 + 0.3 * std::cbrt(1.0 / n) - 0.2 * std::pow(n, -2.0 / 3.0)});
  const auto r = e_jel_extrapolate(d);
  CHECK(r.estimate == doctest::Approx(-1.444).epsilon(1e-9));
  CHECK(r.slope == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(r.monotone);
  const auto flat = e_jel_extrapolate({{16, -1.4442}, {54, -1.4442}, {128, -1.4442}});
  CHECK(flat.constant);
  CHECK(flat.estimate == doctest::Approx(-1.4442));
}

TEST_CASE("grand canonical point jellium stays below the averaged bound") {
  GcPointJelliumParams p;
  p.starts = 2;
  const auto r = grand_canonical_point_jellium(2.0, regular_tetrahedron(1.0), 1.0, p);
  CHECK(r.value <= r.interpolated_bound + 1e-12);
  CHECK(r.best.size() == std::size_t(r.best_n));
  for (const auto& row : r.rows) CHECK(row.value <= row.average + 1e-9);
}

TEST_CASE("random points stay inside the domain") {
  Rng r(2);
  const Domain t = scaled_translate(regular_tetrahedron(1.0), 2.0, Vec3(1, 1, 1));
  for (int i = 0; i < 1000; ++i) CHECK(contains(t, random_point_in(t, r)));
}

}
