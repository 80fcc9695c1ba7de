#include <cmath>

#include "doctest.h"
#include "ldrop/coulomb/ewald.hpp"
#include "ldrop/coulomb/zeta.hpp"
#include "ldrop/droplet/constants.hpp"
#include "ldrop/expansion/fit.hpp"
#include "ldrop/expansion/localization.hpp"
#include "ldrop/expansion/trial.hpp"
#include "ldrop/expansion/upper_bound.hpp"
#include "ldrop/geom/lattice.hpp"
#include "ldrop/jellium/extrapolate.hpp"
#include "ldrop/jellium/grand_canonical.hpp"

using namespace ldrop;

namespace {

const UnitCellJellium& bcc16() {
  static const UnitCellJellium cell = [] {
    BasinHopParams p;
    p.restarts = 1;
    p.hops = 0;
    p.crystal_seed = true;
    return optimize_unit_cell(16, p);
  }();
  return cell;
}

}  // namespace

TEST_SUITE("expansion") {

TEST_CASE("coefficient fit recovers an exact model") {
  std::vector<double> rho, e, e2;
  for (double r = 1e-5; r <= 1.01e-2; r *= 2.0) {
    rho.push_back(r);
    e.push_back(5.3 * r - 2.66 * std::pow(r, 4.0 / 3.0) + 7.0 * r * r);
    e2.push_back(5.3 * r - 2.66 * std::pow(r, 4.0 / 3.0));
  }
  const auto f = extract_coefficients(rho, e, true);
  CHECK(f.c1 == doctest::Approx(5.3).epsilon(1e-10));
  CHECK(f.c2 == doctest::Approx(-2.66).epsilon(1e-9));
  CHECK(f.c3 == doctest::Approx(7.0).epsilon(1e-7));
  CHECK(f.warning.empty());
  const auto g = extract_coefficients(rho, e2, false);
  CHECK(g.c2 == doctest::Approx(-2.66).epsilon(1e-10));
  CHECK(g.residual < 1e-12);
  CHECK_THROWS_AS(extract_coefficients({1e-4, 1e-3}, {1.0, 2.0}, false), NumericError);
  // short density span is flagged, not rejected
  CHECK_FALSE(extract_coefficients({1e-3, 2e-3, 4e-3, 8e-3}, {1, 2, 3, 4}, false).warning.empty());
}

TEST_CASE("trial points") {
  const auto& cell = bcc16();
  CHECK(cell.x.centroid().norm() < 1e-12);
  const double side = 10.0;
  const TrialPoints t = build_trial_points(cell, side);
  CHECK(t.X.size() == 16);
  CHECK(t.Y.size() == 16);
  CHECK(t.X.centroid().norm() < 1e-10);
  CHECK(t.Y.centroid().norm() < 1e-10);
  CHECK(t.length_scale == doctest::Approx(side / std::cbrt(16.0)));
  CHECK(t.boundary_margin >= t.used_c * t.length_scale - 1e-12);
  CHECK(t.min_separation_y >= t.used_c * t.length_scale - 1e-12);
  for (const Vec3& y : t.Y.x) CHECK(y.cwiseAbs().maxCoeff() < side / 2);

  BasinHopParams p;
  p.restarts = 2;
  const TrialPoints two = build_trial_points(2, 3.0, p);
  const double sep = (two.X.x[0] - two.X.x[1]).norm();
  CHECK(sep >= 0.4 * two.length_scale);
}

TEST_CASE("upper bound: periodic image energy equals the lattice zeta value") {
  const auto& cell = bcc16();
  const double zeta = epstein_zeta(make_lattice(LatticeKind::BCC, 1.0), 1.0).value;
  for (double rho : {1e-4, 3e-3}) {
    const auto r = upper_bound_e(rho, cell);
    const double n = 16.0;
    CHECK(r.pair + r.madelung_self == doctest::Approx(n * zeta * std::cbrt(n / std::pow(r.side, 3))).epsilon(1e-10));
    CHECK(r.side == doctest::Approx(std::cbrt(2.5 * n / rho)).epsilon(1e-12));
  }
  const auto r = upper_bound_e(1e-4, cell);
  CHECK(r.residual_coefficient > -2.80);
  CHECK(r.residual_coefficient < -2.50);
  CHECK(r.e_ub < r.mu_rho);
  // the jellium part can never beat the jellium lower bound
  const double m = ball_optimum().m_star;
  for (double rho : {1e-5, 1e-4, 1e-3, 1e-2}) {
    const auto q = upper_bound_e(rho, cell);
    CHECK(q.e_ub >= q.mu_rho + kJelliumLowerBound * std::pow(m, 2.0 / 3.0) * std::pow(rho, 4.0 / 3.0));
    if (rho <= 1e-3) CHECK(q.e_ub <= q.mu_rho);
  }
  const auto single = upper_bound_e(1e-4, cell, MadelungConvention::Single);
  CHECK(single.madelung_self == doctest::Approx(r.madelung_self / 16.0));
  CHECK_THROWS_AS(upper_bound_e(0.1, cell), ArgumentError);
  CHECK(parse_madelung_convention("single") == MadelungConvention::Single);
  CHECK_THROWS_AS(parse_madelung_convention("double"), ArgumentError);
}

TEST_CASE("residual coefficient is stable from 16 to 54 droplets") {
  BasinHopParams p;
  p.restarts = 1;
  p.hops = 0;
  p.crystal_seed = true;
  const auto big = optimize_unit_cell(54, p);
  const double a = upper_bound_e(1e-4, bcc16()).residual_coefficient;
  const double b = upper_bound_e(1e-4, big).residual_coefficient;
  CHECK(std::abs(b - a) <= 0.02 * std::abs(a));
}

TEST_CASE("quadrupolar charges interact with fifth-power decay") {
  // two opposite dipoles make a neutral dipole-free piece; two such pieces interact like xi^{-5}
  auto energy = [](double xi) {
    const double d = 0.1;
    std::vector<std::pair<Vec3, double>> a{{Vec3(d, 0, 0), 1}, {Vec3(-d, 0, 0), 1}, {Vec3::Zero(), -2}};
    double e = 0.0;
    for (auto& p : a)
      for (auto& q : a) e += p.second * q.second / (p.first - q.first - Vec3(xi, 0, 0)).norm();
    return e;
  };
  const double c2 = energy(2.0) * std::pow(2.0, 5), c8 = energy(8.0) * std::pow(8.0, 5);
  CHECK(c8 == doctest::Approx(c2).epsilon(0.02));
}

TEST_CASE("localized perimeter identity") {
  const Tetrahedron delta = regular_tetrahedron(1.0);
  const BallUnion ball = make_ball_union({Ball{1.0, Vec3::Zero()}});
  const auto r = localized_perimeter_check(ball, delta, 4.0, 200000, 5);
  CHECK(r.lhs == doctest::Approx(4.0 * kPi));
  CHECK(std::abs(r.z_score()) < 4.0);
  CHECK(r.sigma < 0.01 * r.lhs);
  CHECK_THROWS_AS(localized_perimeter_check(ball, regular_tetrahedron(2.0), 4.0, 100, 1), ArgumentError);
  const auto empty = localized_perimeter_check(make_ball_union({}), delta, 4.0, 1000, 1);
  CHECK(empty.lhs == 0.0);
  CHECK(empty.rhs == 0.0);
  // the boundary correction fades as the simplex grows
  const auto far = localized_perimeter_check(ball, delta, 64.0, 100000, 2);
  CHECK(far.correction == doctest::Approx(r.correction / 16.0));
  CHECK(std::abs(far.localized_mean - far.lhs) <= 4.0 * far.sigma + far.correction);
}

TEST_CASE("localized coulomb inequality") {
  const Tetrahedron delta = regular_tetrahedron(1.0);
  const BallUnion om = make_ball_union({Ball{0.7, Vec3(1, 0, 0)}, Ball{0.6, Vec3(-1.2, 0.5, 0)}});
  const auto r = localized_coulomb_check(om, Cube{6.0, Vec3::Zero()}, 0.05, delta, 2.0, 50000, 3);
  CHECK(r.holds);
  CHECK(r.margin == doctest::Approx(r.lhs - r.rhs));
  CHECK(r.lhs > 0.0);
  const auto empty = localized_coulomb_check(make_ball_union({}), Cube{6.0, Vec3::Zero()}, 0.0, delta, 2.0, 1000, 1);
  CHECK(empty.lhs == 0.0);
  CHECK(empty.rhs == 0.0);
  // localization loses less as the simplex grows
  const auto mid = localized_coulomb_check(om, Cube{6.0, Vec3::Zero()}, 0.05, delta, 20.0, 50000, 3);
  const auto huge = localized_coulomb_check(om, Cube{6.0, Vec3::Zero()}, 0.05, delta, 200.0, 50000, 3);
  CHECK(r.rhs < mid.rhs);
  CHECK(mid.rhs < huge.rhs);
  CHECK(huge.rhs == doctest::Approx(huge.lhs).epsilon(0.05));
}

TEST_CASE("lower simplex bound") {
  const auto z = lower_simplex_rhs(0.0, 3.0);
  CHECK(z.F == 0.0);
  CHECK(z.value == 0.0);
  CHECK_THROWS_AS(lower_simplex_rhs(1e-4, 10.0), ArgumentError);
  FgcParams p;
  p.starts = 2;
  const auto r = lower_simplex_rhs(1e-3, 3.0, p);
  CHECK(r.side == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(r.F / (0.1 * 27.0)).epsilon(1e-12));
  CHECK(r.value < 0.0);
}

TEST_CASE("lower simplex bound matches grand canonical point jellium") {
  const double m = ball_optimum().m_star;
  GcPointJelliumParams gp;
  gp.starts = 4;
  const double A = 3.0;
  const double point = grand_canonical_point_jellium(A, regular_tetrahedron(1.0), m, gp).value / (A * A * A);
  std::vector<double> v;
  for (double rho : {1e-3, 1e-4, 1e-5}) v.push_back(lower_simplex_rhs(rho, A).value);
  CHECK(v[1] == doctest::Approx(point).epsilon(0.15));
  // approaches the point limit monotonically
  CHECK(std::abs(v[0] - point) > std::abs(v[1] - point));
  CHECK(std::abs(v[1] - point) > std::abs(v[2] - point));
}

}
