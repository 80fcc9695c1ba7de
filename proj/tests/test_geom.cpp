#include <cmath>

#include "doctest.h"
#include "ldrop/geom/domain.hpp"
#include "ldrop/geom/lattice.hpp"
#include "ldrop/geom/serialize.hpp"
#include "ldrop/geom/voxel.hpp"

using namespace ldrop;

TEST_SUITE("geom") {

TEST_CASE("regular tetrahedron measures") {
  const Tetrahedron t = regular_tetrahedron(1.0);
  const Polyhedron p = tetra_polyhedron(t);
  CHECK(p.volume() == doctest::Approx(1.0).epsilon(1e-14));
  // edge a with a^3 / (6 sqrt 2) = 1, surface sqrt(3) a^2
  const double a = std::cbrt(6.0 * std::sqrt(2.0));
  CHECK(p.surface_area() == doctest::Approx(std::sqrt(3.0) * a * a).epsilon(1e-13));
  const Insphere s = insphere(Domain(t));
  CHECK(s.radius == doctest::Approx(3.0 / p.surface_area()).epsilon(1e-13));
  CHECK(s.center.norm() < 1e-13);
  CHECK(domain_measure(Domain(t)).diameter == doctest::Approx(a).epsilon(1e-13));
}

TEST_CASE("containment of closed and open sets") {
  const Domain c = Cube{2.0, Vec3::Zero()};
  CHECK(contains(c, Vec3(1, 0, 0)));
  CHECK_FALSE(contains_strictly(c, Vec3(1, 0, 0)));
  CHECK(contains_strictly(c, Vec3(0.99, -0.99, 0)));
  const Domain b = Ball{1.0, Vec3(1, 1, 1)};
  CHECK(contains(b, Vec3(2, 1, 1)));
  CHECK_FALSE(contains(b, Vec3(2.01, 1, 1)));
  const Domain s = scaled_translate(regular_tetrahedron(1.0), 3.0, Vec3(5, 0, 0));
  CHECK(contains_strictly(s, Vec3(5, 0, 0)));
  CHECK(domain_measure(s).volume == doctest::Approx(27.0).epsilon(1e-13));
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(validate(Domain(Ball{-1.0, Vec3::Zero()})), ArgumentError);
  Tetrahedron flat{{Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 0)}};
  CHECK_THROWS_AS(validate(Domain(flat)), ArgumentError);
}

TEST_CASE("lattices: density, duality, conventional cells") {
  const Lattice bcc = make_lattice(LatticeKind::BCC, 1.0);
  CHECK(bcc.covolume() == doctest::Approx(1.0).epsilon(1e-14));
  // the reciprocal of BCC is FCC
  const Lattice d = dual_lattice(bcc);
  CHECK(same_lattice(d, make_lattice(LatticeKind::FCC, 1.0)));
  CHECK(conventional_side(bcc) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-14));
  const Lattice sc = make_lattice(LatticeKind::SC, 8.0);
  CHECK(sc.covolume() == doctest::Approx(0.125).epsilon(1e-14));
  // 6 nearest neighbours of SC at distance 1/2
  CHECK(lattice_vectors_within(sc, 0.51).size() == 6);
  CHECK(parse_lattice_kind("bcc") == LatticeKind::BCC);
  CHECK_THROWS_AS(parse_lattice_kind("hcp"), ArgumentError);
}

TEST_CASE("face counting is exact for grid-aligned boxes") {
  const double h = 0.125;
  const VoxelSet v = voxelize(Domain(Cube{1.0, Vec3::Constant(0.5)}), h);
  CHECK(v.measure() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(perimeter_estimate(v, PerimeterMethod::FaceCount) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("crofton perimeter of a voxel ball") {
  const VoxelSet v = voxelize(Domain(Ball{1.0, Vec3::Zero()}), 1.0 / 24);
  CHECK(v.measure() == doctest::Approx(4.0 * kPi / 3.0).epsilon(0.01));
  CHECK(perimeter_estimate(v) == doctest::Approx(4.0 * kPi).epsilon(0.03));
  // face counting overestimates by the mean |n|_1 = 3/2
  CHECK(perimeter_estimate(v, PerimeterMethod::FaceCount) == doctest::Approx(6.0 * kPi).epsilon(0.03));
}

TEST_CASE("ball unions") {
  const BallUnion u = make_ball_union({Ball{1, Vec3::Zero()}, Ball{1, Vec3(3, 0, 0)}});
  CHECK(u.disjoint);
  CHECK(u.volume() == doctest::Approx(8.0 * kPi / 3.0));
  CHECK_FALSE(make_ball_union({Ball{1, Vec3::Zero()}, Ball{1, Vec3(1.5, 0, 0)}}).disjoint);
}

TEST_CASE("json round trips") {
  const Domain s = scaled_translate(Domain(Cube{2.0, Vec3(1, 2, 3)}), 0.5, Vec3(0, 1, 0));
  const Domain back = domain_from_json(to_json(s));
  CHECK(to_json(back) == to_json(s));
  const Lattice L = make_lattice(LatticeKind::FCC, 2.0);
  CHECK(same_lattice(lattice_from_json(to_json(L)), L));
  const BallUnion u = make_ball_union({Ball{0.5, Vec3(1, 0, 0)}});
  CHECK(to_json(ball_union_from_json(to_json(u))) == to_json(u));
}

}
