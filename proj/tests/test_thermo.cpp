#include <cmath>
#include <map>
#include <tuple>

#include "doctest.h"
#include "ldrop/thermo/quadrupole_layer.hpp"
#include "ldrop/thermo/recursion.hpp"
#include "ldrop/thermo/swiss_cheese.hpp"

using namespace ldrop;

TEST_SUITE("thermo") {

TEST_CASE("swiss cheese schedule in exact arithmetic") {
  const auto s = swiss_cheese(3);
  REQUIRE(s.rows.size() == 4);
  CHECK(s.rows[0].R == "1/2");
  CHECK(s.rows[1].R == "53/2");
  CHECK(s.rows[2].R == "1457/2");
  CHECK(s.rows[3].R == "39365/2");
  CHECK(s.rows[0].n == "1/26");
  CHECK(s.rows[1].n == "729");
  CHECK(s.rows[2].n == "13817466");
  CHECK(s.rows[3].n == "261896250564");
  const auto big = swiss_cheese(12);
  CHECK(big.bound_constant <= 50.0);
  CHECK(big.bound_constant >= 1.0);
  for (const auto& r : big.rows)
    if (r.j >= 2) {
      CHECK(r.leftover_ratio <= big.bound_constant);
      CHECK(r.leftover_ratio >= 1.0 / big.bound_constant);
    }
  CHECK_THROWS_AS(swiss_cheese(0), ArgumentError);
  CHECK_THROWS_AS(swiss_cheese(15), ArgumentError);
}

TEST_CASE("recursion limit") {
  const double gamma = 0.5;
  std::vector<double> f(200, 5.0), delta(200);
  for (std::size_t k = 0; k < delta.size(); ++k) delta[k] = 5.0 * std::pow(gamma, double(k));
  const auto c = recursion_limit(f, gamma, delta);
  CHECK(c.limit == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(c.gap < 1e-12);
  try {
    recursion_limit({1, 1, 1, 10}, gamma, {1, 0.5, 0.25, 0.125});
    FAIL("no exception");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("K=3") != std::string::npos);
  }
  CHECK_THROWS_AS(recursion_limit({1}, 1.5, {0}), ArgumentError);
  // f_K = c + a gamma^K with delta_K = 2 a gamma^K and c <= a converges to c
  std::vector<double> g(120), dg(120);
  for (std::size_t k = 0; k < g.size(); ++k) {
    g[k] = 0.5 + 0.7 * std::pow(0.8, double(k));
    dg[k] = 1.4 * std::pow(0.8, double(k));
  }
  CHECK(recursion_limit(g, 0.8, dg).limit == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("quadrupole layer of a ball") {
  QuadrupoleLayerParams p;
  p.eps = 0.25;
  p.K = 4;
  p.rho = 0.2;
  const QuadrupoleLayer L = quadrupole_layer(Ball{2.0, Vec3::Zero()}, p);
  REQUIRE(!L.pieces.empty());
  CHECK(L.count[0] + L.count[1] + L.count[2] == L.pieces.size());
  CHECK(L.max_charge < 1e-12);
  CHECK(L.max_dipole < 1e-12);
  double vol = 0.0;
  // every fine sub-cell belongs to exactly one piece
  std::map<std::tuple<long, long, long>, int> owner;
  const double fine = p.eps / (p.K * p.subdivision);
  auto key = [&](const Vec3& c) {
    return std::make_tuple(long(std::floor(c.x() / fine)), long(std::floor(c.y() / fine)), long(std::floor(c.z() / fine)));
  };
  for (const auto& pc : L.pieces) {
    vol += pc.volume;
    const auto& d = pc.diag;
    CHECK(std::abs(d.quadrupole.trace()) < 1e-12);
    CHECK((d.quadrupole - d.quadrupole.transpose()).norm() < 1e-14);
    if (pc.kind == PieceKind::SmallFull) CHECK(d.quadrupole.norm() < 1e-13);
    // Omega sits inside its host
    CHECK((pc.omega.lo - pc.host.lo).minCoeff() >= -1e-12);
    CHECK((pc.host.lo + Vec3::Constant(pc.host.side) - pc.omega.lo - Vec3::Constant(pc.omega.side)).minCoeff() >= -1e-12);
    CHECK(pc.omega.volume() == doctest::Approx(p.rho * pc.volume).epsilon(1e-12));
    if (pc.kind == PieceKind::LargeMerged) {
      const double U = pc.volume - std::pow(p.eps, 3);
      CHECK(pc.omega.side == doctest::Approx(p.eps * std::cbrt(p.rho) * std::cbrt(1.0 + U / std::pow(p.eps, 3))).epsilon(1e-12));
    }
    if (pc.kind != PieceKind::SmallFull) {
      for (const Box& b : pc.partial) CHECK(owner[key(b.center())]++ == 0);
    }
  }
  CHECK(vol == doctest::Approx(L.layer_volume).epsilon(1e-12));
  // a ball shell of the layer thickness bounds the volume from above
  CHECK(L.layer_volume < 4.0 * kPi / 3.0 * (std::pow(2.0 + std::sqrt(3.0) * (p.eps + p.eps / p.K), 3) - 8.0));
  for (const auto& pc : L.pieces)
    if (pc.kind == PieceKind::LargeMerged) {
      CHECK(piece_decay_exponent(pc, p.rho, p.eps) == doctest::Approx(3.0).epsilon(0.1));
      break;
    }
}

TEST_CASE("layer constants are stable under refinement") {
  QuadrupoleLayerParams p;
  p.K = 4;
  p.rho = 0.2;
  p.eps = 0.25;
  const auto a = quadrupole_layer(Ball{2.0, Vec3::Zero()}, p);
  p.eps = 0.125;
  const auto b = quadrupole_layer(Ball{2.0, Vec3::Zero()}, p);
  CHECK(b.max_shift_constant == doctest::Approx(a.max_shift_constant).epsilon(0.25));
  CHECK(b.max_perimeter_constant == doctest::Approx(a.max_perimeter_constant).epsilon(0.25));
  // piece count scales with the layer volume over eps^3
  const double ca = a.pieces.size() * std::pow(0.25, 3) / a.layer_volume;
  const double cb = b.pieces.size() * std::pow(0.125, 3) / b.layer_volume;
  CHECK(cb == doctest::Approx(ca).epsilon(0.5));
}

TEST_CASE("quadrupole layer of a cube and failure reporting") {
  QuadrupoleLayerParams p;
  p.eps = 0.25;
  p.K = 4;
  p.rho = 0.1;
  const QuadrupoleLayer L = quadrupole_layer(Cube{2.75, Vec3::Zero()}, p);
  CHECK(L.max_charge < 1e-12);
  // faces on cell boundaries leave no partial cells
  CHECK(L.count[2] == 0);
  p.K = 1;
  p.rho = 0.5;
  try {
    quadrupole_layer(Ball{2.0, Vec3::Zero()}, p);
    FAIL("no exception");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("piece") != std::string::npos);
  }
  p.eps = 1.0;
  CHECK_THROWS_AS(quadrupole_layer(Ball{2.0, Vec3::Zero()}, p), ArgumentError);
}

}
