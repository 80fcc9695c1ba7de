#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "doctest.h"
#include "ldrop/coulomb/ewald.hpp"
#include "ldrop/coulomb/gamma.hpp"
#include "ldrop/coulomb/grid.hpp"
#include "ldrop/coulomb/pair.hpp"
#include "ldrop/coulomb/potentials.hpp"
#include "ldrop/coulomb/zeta.hpp"
#include "ldrop/core/rng.hpp"
#include "ldrop/geom/lattice.hpp"
#include "ldrop/geom/voxel.hpp"

using namespace ldrop;

TEST_SUITE("coulomb") {

TEST_CASE("upper incomplete gamma against independent references") {
  for (double x : {0.01, 0.3, 1.0, 2.5, 7.0, 30.0}) {
    for (double a : {0.5, 1.0, 1.5, 3.0, 4.5})
      CHECK(upper_incomplete_gamma(a, x) == doctest::Approx(boost::math::tgamma(a, x)).epsilon(1e-12));
    CHECK(upper_incomplete_gamma(0.0, x) == doctest::Approx(boost::math::expint(1, x)).epsilon(1e-12));
    // Gamma(-1/2, x) = 2 e^{-x} / sqrt(x) - 2 sqrt(pi) erfc(sqrt(x))
    const double ref = 2.0 * std::exp(-x) / std::sqrt(x) - 2.0 * std::sqrt(kPi) * std::erfc(std::sqrt(x));
    CHECK(upper_incomplete_gamma(-0.5, x) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("epstein zeta reference values") {
  const Lattice bcc = make_lattice(LatticeKind::BCC, 1.0);
  const Lattice sc = make_lattice(LatticeKind::SC, 1.0);
  const Lattice fcc = make_lattice(LatticeKind::FCC, 1.0);
  CHECK(epstein_zeta(bcc, 1.0).value == doctest::Approx(-1.44423075152697).epsilon(1e-12));
  CHECK(epstein_zeta(sc, 1.0).value == doctest::Approx(-1.4186487397).epsilon(1e-9));
  CHECK(epstein_zeta(bcc, 0.0).value == -0.5);
  CHECK_THROWS_AS(epstein_zeta(sc, 3.0), PoleError);
  // density scaling: zeta_{cL}(s) = c^{-s} zeta_L(s)
  CHECK(epstein_zeta(make_lattice(LatticeKind::BCC, 8.0), 1.0).value ==
        doctest::Approx(2.0 * -1.44423075152697).epsilon(1e-12));
  // functional equation with the dual lattice
  for (double s : {0.5, 1.0, 1.3, 2.2})
    CHECK(completed_zeta(bcc, s) == doctest::Approx(completed_zeta(fcc, 3.0 - s)).epsilon(1e-11));
}

TEST_CASE("epstein zeta matches a direct sum in the convergent range") {
  const Lattice sc = make_lattice(LatticeKind::SC, 1.0);
  const double R = 30.0;
  double s = 0.0;
  for (const Vec3& v : lattice_vectors_within(sc, R)) s += std::pow(v.norm(), -5.0);
  s = 0.5 * s + kPi / (R * R);  // continuum tail of 1/2 int_{|x|>R} |x|^{-5}
  CHECK(epstein_zeta(sc, 5.0).value == doctest::Approx(s).epsilon(1e-5));
}

TEST_CASE("periodic kernel") {
  CHECK(madelung_z3() == doctest::Approx(-2.8372974795).epsilon(1e-10));
  const PeriodicKernel k1(2.0), k2(2.0, 0.3), k3(2.0, 4.0);
  const Vec3 x(0.3, -0.7, 0.45);
  CHECK(k1.value(x) == doctest::Approx(k2.value(x)).epsilon(1e-11));
  CHECK(k1.value(x) == doctest::Approx(k3.value(x)).epsilon(1e-11));
  CHECK(k1.value(x + Vec3(2.0, 0, -4.0)) == doctest::Approx(k1.value(x)).epsilon(1e-11));
  CHECK(k1.regular_part_at_origin() == doctest::Approx(madelung_z3() / 2.0).epsilon(1e-11));
  // Laplacian away from the lattice equals 4 pi / l^3
  const double h = 1e-3;
  double lap = 0.0;
  for (int a = 0; a < 3; ++a) {
    Vec3 e = Vec3::Zero();
    e[a] = h;
    lap += (k1.value(x + e) - 2.0 * k1.value(x) + k1.value(x - e)) / (h * h);
  }
  CHECK(lap == doctest::Approx(4.0 * kPi / 8.0).epsilon(1e-4));
  const Vec3 g = k1.gradient(x);
  for (int a = 0; a < 3; ++a) {
    Vec3 e = Vec3::Zero();
    e[a] = 1e-6;
    CHECK(g[a] == doctest::Approx((k1.value(x + e) - k1.value(x - e)) / 2e-6).epsilon(1e-6));
  }
}

TEST_CASE("potentials of uniform bodies") {
  CHECK(potential_ball(2.0, 1.0, 0.0) == doctest::Approx(3.0));
  CHECK(potential_ball(2.0, 1.0, 4.0) == doctest::Approx(0.5));
  CHECK(potential_cube(1.0, Vec3::Zero()) == doctest::Approx(2.3800773640).epsilon(1e-9));
  // far field tends to V / r
  const Vec3 far(40.0, 13.0, -7.0);
  CHECK(potential_box(Vec3(0, 0, 0), Vec3(1, 2, 3), far + Vec3(0.5, 1, 1.5)) ==
        doctest::Approx(6.0 / far.norm()).epsilon(1e-3));
  const Ball b{1.3, Vec3(0.1, 0.2, 0.3)};
  CHECK(domain_potential(Domain(b), Vec3(0.5, 0.5, 0.5)) ==
        doctest::Approx(potential_ball(4.0 * kPi / 3.0 * std::pow(1.3, 3), 1.3, (Vec3(0.4, 0.3, 0.2)).norm())));
  // polyhedral cube agrees with the box formula
  const Polyhedron cube = cube_polyhedron(Cube{1.0, Vec3::Zero()});
  for (const Vec3& y : {Vec3(0.1, 0.2, -0.3), Vec3(0.9, 0.1, 0.0), Vec3(2.0, -1.0, 0.5)})
    CHECK(potential_polyhedron(cube, y).value == doctest::Approx(potential_cube(1.0, y)).epsilon(1e-11));
}

TEST_CASE("closed-form face integral matches quadrature") {
  const Tetrahedron t = regular_tetrahedron(1.0);
  const Polyhedron p = tetra_polyhedron(t);
  for (const Vec3& x : {Vec3(0.1, 0.0, 0.05), Vec3(1.5, -0.3, 0.7), Vec3(0.0, 0.0, 3.0)})
    for (const Face& f : p.faces)
      CHECK(face_inverse_distance(f, x) == doctest::Approx(face_inverse_distance_quadrature(f, x)).epsilon(1e-9));
}

TEST_CASE("pair coulomb integrals") {
  CHECK(unit_cube_pair(0, 0, 0) == doctest::Approx(1.8823126444).epsilon(1e-9));
  CHECK(unit_cube_pair(10, 0, 0) == doctest::Approx(0.1).epsilon(1e-4));
  CHECK(unit_cube_pair(0, 1, 0) == doctest::Approx(unit_cube_pair(1, 0, 0)).epsilon(1e-12));
  const Domain c1 = Cube{1.0, Vec3::Constant(0.5)};
  CHECK(domain_pair_coulomb(c1, c1) == doctest::Approx(1.8823126444).epsilon(1e-8));
  // Newton: disjoint balls interact as point charges
  const double q = 4.0 * kPi / 3.0;
  CHECK(domain_pair_coulomb(Ball{1, Vec3::Zero()}, Ball{1, Vec3(3, 1, 0)}) ==
        doctest::Approx(q * q / std::sqrt(10.0)).epsilon(1e-12));
  // homogeneity of degree 5
  const Domain t = regular_tetrahedron(1.0);
  const Domain c = Cube{1.0, Vec3(2.0, 0.0, 0.0)};
  const double d1 = domain_pair_coulomb(t, c);
  const double d2 = domain_pair_coulomb(scaled_translate(t, 1.7), scaled_translate(c, 1.7));
  CHECK(d2 == doctest::Approx(std::pow(1.7, 5) * d1).epsilon(1e-9));
}

TEST_CASE("grid coulomb energy: fft equals the direct sum") {
  Rng r(3);
  GridBox box = grid_box_covering(0.25, Vec3::Zero(), Vec3(2.0, 1.5, 1.0), 0);
  ChargeGrid g{box, std::vector<double>(box.size())};
  for (double& v : g.f) v = r.uniform(-1.0, 1.0);
  const double fast = freespace_coulomb_energy(g);
  const double slow = freespace_coulomb_energy_direct(g);
  CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
  CHECK(good_fft_size(11) == 12);
  CHECK(good_fft_size(97) == 98);
}

}
