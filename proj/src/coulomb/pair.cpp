#include "ldrop/coulomb/pair.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <map>
#include <mutex>

#include "ldrop/core/quadrature.hpp"
#include "ldrop/coulomb/potentials.hpp"
#include "ldrop/geom/serialize.hpp"

namespace ldrop {

namespace {

double ball_charge(const Ball& b) { return 4.0 * kPi / 3.0 * b.radius * b.radius * b.radius; }

// int over the triangle (a, b, c) of f, Duffy map collapsing the edge at a
template <class F>
double triangle_integral(const Vec3& a, const Vec3& b, const Vec3& c, F&& f, double tol) {
  const double area2 = (b - a).cross(c - a).norm();
  auto inner = [&](double u) {
    const Vec3 base = a + u * (b - a);
    const Vec3 span = u * (c - b);
    return quad::adaptive([&](double t) { return f(base + t * span); }, 0.0, 1.0, tol) * u;
  };
  return area2 * quad::adaptive(inner, 0.0, 1.0, tol);
}

// Duffy maps above use x = a + u (b - a) + u t (c - b), Jacobian u * |(b-a) x (c-b)|,
// and |(b - a) x (c - b)| = |(b - a) x (c - a)|.

double face_pair(const Face& fi, const Face& fj, double tol) {
  double total = 0.0;
  for (std::size_t k = 1; k + 1 < fi.vertices.size(); ++k) {
    total += triangle_integral(
        fi.vertices[0], fi.vertices[k], fi.vertices[k + 1],
        [&](const Vec3& x) { return face_distance(fj, x, tol); }, tol);
  }
  return total;
}

double ball_in_polyhedron_mean(const Ball& b, const Polyhedron& p, double tol) {
  // 1/|B| int_B Phi_P: harmonic outside P, Delta Phi = -4 pi inside P
  return potential_polyhedron(p, b.center, tol).value;
}

}  // namespace

double polyhedron_pair_coulomb(const Polyhedron& a, const Polyhedron& b, double tol) {
  double total = 0.0;
  for (const auto& fi : a.faces)
    for (const auto& fj : b.faces) {
      const double c = fi.normal.dot(fj.normal);
      if (std::abs(c) < 1e-14) continue;
      total += c * face_pair(fi, fj, tol);
    }
  return -0.5 * total;
}

double ball_domain_coulomb(const Ball& b, const Domain& d, double tol) {
  // radial Gauss-Legendre times a product rule on the sphere; the error is the
  // change from halving the angular and radial orders
  auto run = [&](int nr, int nt, int np) {
    const double R = b.radius;
    double total = 0.0;
    std::vector<double> rn(nr), rw(nr), tn(nt), tw(nt);
    auto legendre = [](int n, std::vector<double>& x, std::vector<double>& w) {
      for (int i = 0; i < n; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
          double p1 = 1.0, p2 = 0.0;
          for (int j = 1; j <= n; ++j) {
            const double p3 = p2;
            p2 = p1;
            p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
          }
          const double pp = n * (z * p1 - p2) / (z * z - 1.0);
          const double dz = p1 / pp;
          z -= dz;
          if (std::abs(dz) < 1e-16) {
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            break;
          }
        }
      }
    };
    legendre(nr, rn, rw);
    legendre(nt, tn, tw);
    for (int i = 0; i < nr; ++i) {
      const double r = 0.5 * R * (rn[i] + 1.0);
      const double wr = 0.5 * R * rw[i] * r * r;
      for (int j = 0; j < nt; ++j) {
        const double ct = tn[j], st = std::sqrt(1.0 - ct * ct);
        for (int k = 0; k < np; ++k) {
          const double phi = 2.0 * kPi * k / np;
          const Vec3 x = b.center + r * Vec3(st * std::cos(phi), st * std::sin(phi), ct);
          total += wr * tw[j] * (2.0 * kPi / np) * domain_potential(d, x, 1e-12);
        }
      }
    }
    return total;
  };
  const double fine = run(32, 32, 64);
  const double coarse = run(16, 16, 32);
  if (std::abs(fine - coarse) > tol * std::abs(fine) * 1e3)
    throw NumericError("ball/domain quadrature: achieved relative error " +
                       std::to_string(std::abs(fine - coarse) / std::abs(fine)));
  return fine;
}

namespace {

// iint over D x D: scalings pull out as s^5 and results are memoized per shape
double self_pair(const Domain& d, double tol) {
  if (const auto* st = std::get_if<ScaledTranslate>(&d)) return std::pow(st->scale, 5) * self_pair(*st->base, tol);
  if (auto b = as_ball(d)) {
    const double q = ball_charge(*b);
    return 1.2 * q * q / b->radius;
  }
  if (const auto* c = std::get_if<Cube>(&d)) return std::pow(c->side, 5) * unit_cube_pair(0, 0, 0);
  const std::string key = to_json(d).dump() + "|" + std::to_string(tol);
  static std::mutex mu;
  static std::map<std::string, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const auto p = as_polyhedron(d);
  const double v = polyhedron_pair_coulomb(*p, *p, tol);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, v);
  return v;
}

bool same_domain(const Domain& a, const Domain& b) { return to_json(a) == to_json(b); }

}  // namespace

double domain_pair_coulomb(const Domain& da, const Domain& db, double tol) {
  validate(da);
  validate(db);
  if (same_domain(da, db)) return self_pair(da, tol);
  const auto ba = as_ball(da), bb = as_ball(db);
  if (ba && bb) {
    const double qa = ball_charge(*ba), qb = ball_charge(*bb);
    const double dist = (ba->center - bb->center).norm();
    if (dist >= ba->radius + bb->radius) return qa * qb / dist;
    // one ball inside the other: integrate the inner potential polynomial
    const Ball& small = ba->radius <= bb->radius ? *ba : *bb;
    const Ball& big = ba->radius <= bb->radius ? *bb : *ba;
    if (dist + small.radius <= big.radius) {
      const double qs = ball_charge(small), qbig = ball_charge(big);
      const double R = big.radius;
      const double mean_sq = dist * dist + 0.6 * small.radius * small.radius;
      return qbig / (2.0 * R * R * R) * (3.0 * R * R - mean_sq) * qs;
    }
    return ball_domain_coulomb(*ba, db);
  }
  if (ba || bb) {
    const Ball& b = ba ? *ba : *bb;
    const Domain& other = ba ? db : da;
    const auto p = as_polyhedron(other);
    const double q = ball_charge(b);
    bool inside = true, separated = false;
    for (const auto& f : p->faces) {
      const double s = f.normal.dot(b.center) - f.offset;
      if (s > -b.radius) inside = false;
      if (s >= b.radius) separated = true;
    }
    if (inside) return q * (ball_in_polyhedron_mean(b, *p, 1e-13) - 0.4 * kPi * b.radius * b.radius);
    if (separated) return q * ball_in_polyhedron_mean(b, *p, 1e-13);
    return ball_domain_coulomb(b, other);
  }
  return polyhedron_pair_coulomb(*as_polyhedron(da), *as_polyhedron(db), tol);
}

namespace {

// int over the unit box with lower corner lo of w(z) / |z|, w the product of the
// tent factors (1 - |z_i - o_i|)
double tent_box(const std::array<int, 3>& lo, const std::array<int, 3>& o) {
  auto weight = [&](const Vec3& z) {
    double w = 1.0;
    for (int i = 0; i < 3; ++i) w *= 1.0 - std::abs(z[i] - o[i]);
    return w;
  };
  bool corner = true;
  for (int i = 0; i < 3; ++i)
    if (lo[i] != 0 && lo[i] != -1) corner = false;
  using G24 = boost::math::quadrature::gauss<double, 24>;
  if (!corner) {
    return G24::integrate(
        [&](double x) {
          return G24::integrate(
              [&](double y) {
                return G24::integrate(
                    [&](double z) {
                      const Vec3 p(x, y, z);
                      return weight(p) / p.norm();
                    },
                    lo[2], lo[2] + 1.0);
              },
              lo[1], lo[1] + 1.0);
        },
        lo[0], lo[0] + 1.0);
  }
  // origin at a corner: cone from the origin over the three far faces,
  // z = s y, dz = s^2 ds (y . n) dA_y, with y . n = 1 on the far faces
  double total = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double c = lo[axis] == 0 ? 1.0 : -1.0;
    const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
    total += G24::integrate(
        [&](double u) {
          return G24::integrate(
              [&](double v) {
                Vec3 y;
                y[axis] = c;
                y[a1] = u;
                y[a2] = v;
                const double r = y.norm();
                // polynomial of degree 4 in s: exact with 3 points
                const double sint = boost::math::quadrature::gauss<double, 3>::integrate(
                    [&](double s) { return s * weight(s * y); }, 0.0, 1.0);
                return sint / r;
              },
              lo[a2], lo[a2] + 1.0);
        },
        lo[a1], lo[a1] + 1.0);
  }
  return total;
}

}  // namespace

double unit_cube_pair(int ox, int oy, int oz) {
  // int A(z - o) / |z| with A(w) = prod (1 - |w_i|)_+ the autocorrelation of the cube
  std::array<int, 3> o{std::abs(ox), std::abs(oy), std::abs(oz)};
  std::sort(o.begin(), o.end());
  static std::mutex mu;
  static std::map<std::array<int, 3>, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(o);
    if (it != cache.end()) return it->second;
  }
  double total = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const std::array<int, 3> lo{o[0] - 1 + a, o[1] - 1 + b, o[2] - 1 + c};
        total += tent_box(lo, o);
      }
  std::lock_guard<std::mutex> lock(mu);
  cache[o] = total;
  return total;
}

}  // namespace ldrop
