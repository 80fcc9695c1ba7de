#include "ldrop/expansion/localization.hpp"

#include <cmath>

#include "ldrop/core/parallel.hpp"
#include "ldrop/core/rng.hpp"
#include "ldrop/droplet/energy.hpp"
#include "ldrop/jellium/optimize.hpp"

namespace ldrop {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr int kSpherePoints = 256;
constexpr int kFacePoints = 128;

struct Moments {
  double sum = 0.0, sum2 = 0.0;
};

// Reduce per-chunk moments in chunk order so the thread count never matters.
template <class Body>
Moments chunked(std::size_t samples, std::uint64_t seed, Body body) {
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Moments> slots(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(stream_seed(seed, c));
    const std::size_t end = std::min(samples, (c + 1) * kChunk);
    Moments m;
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const double v = body(rng);
      m.sum += v;
      m.sum2 += v * v;
    }
    slots[c] = m;
  });
  Moments tot;
  for (const auto& m : slots) {
    tot.sum += m.sum;
    tot.sum2 += m.sum2;
  }
  return tot;
}

void mean_sigma(const Moments& m, std::size_t n, double* mean, double* sigma) {
  *mean = m.sum / double(n);
  const double var = n > 1 ? std::max(0.0, (m.sum2 - double(n) * *mean * *mean) / double(n - 1)) : 0.0;
  *sigma = std::sqrt(var / double(n));
}

Tetrahedron checked_delta(const Tetrahedron& delta) {
  const double vol = tetra_polyhedron(delta).volume();
  if (std::abs(vol - 1.0) > 1e-9) throw ArgumentError("localization: Delta must have unit volume");
  Tetrahedron d = delta;
  Vec3 c = Vec3::Zero();
  for (const auto& v : d.vertices) c += v / 4.0;
  for (auto& v : d.vertices) v -= c;
  return d;
}

bool in_union(const BallUnion& b, const Vec3& x) {
  for (const auto& ball : b.balls)
    if ((x - ball.center).squaredNorm() < ball.radius * ball.radius) return true;
  return false;
}

}  // namespace

PerimeterIdentityReport localized_perimeter_check(const BallUnion& omega, const Tetrahedron& delta_in,
                                                    double l, std::size_t samples, std::uint64_t seed) {
  if (!(l > 0)) throw ArgumentError("perimeter identity: l must be positive");
  if (samples < 2) throw ArgumentError("perimeter identity: need at least 2 samples");
  if (!omega.disjoint) throw ArgumentError("perimeter identity: balls must be disjoint");
  const Tetrahedron delta = checked_delta(delta_in);
  const Polyhedron dp = tetra_polyhedron(delta);

  PerimeterIdentityReport r;
  r.samples = samples;
  r.lhs = omega.perimeter();
  r.correction = dp.surface_area() * omega.volume() / l;
  if (omega.balls.empty()) return r;

  Vec3 lo = omega.balls[0].center, hi = lo;
  for (const auto& b : omega.balls) {
    lo = lo.cwiseMin(b.center - Vec3::Constant(b.radius));
    hi = hi.cwiseMax(b.center + Vec3::Constant(b.radius));
  }
  const Vec3 mid = 0.5 * (lo + hi);
  double reach = 0.0;
  for (const auto& b : omega.balls) reach = std::max(reach, (b.center - mid).norm() + b.radius);
  double circ = 0.0;
  for (const auto& v : delta.vertices) circ = std::max(circ, v.norm());
  const double tr = reach + l * circ;  // centroids farther than this miss Omega
  const double weight = 4.0 / 3.0 * kPi * tr * tr * tr / (l * l * l);

  std::vector<Vec3> fib(kSpherePoints);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < kSpherePoints; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / kSpherePoints;
    const double s = std::sqrt(1.0 - z * z);
    fib[k] = Vec3(s * std::cos(golden * k), s * std::sin(golden * k), z);
  }

  const Moments m = chunked(samples, seed, [&](Rng& rng) {
    Vec3 t;
    do t = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    while (t.squaredNorm() > 1.0);
    t = mid + tr * t;
    const Mat3 R = rng.rotation();
    // world-frame face planes of T = t + R l Delta
    std::array<Vec3, 4> n;
    std::array<double, 4> off;
    for (int f = 0; f < 4; ++f) {
      n[f] = R * dp.faces[f].normal;
      off[f] = n[f].dot(t) + l * dp.faces[f].offset;
    }
    auto inside_t = [&](const Vec3& x) {
      for (int f = 0; f < 4; ++f)
        if (n[f].dot(x) > off[f]) return false;
      return true;
    };
    double per = 0.0;
    std::array<bool, 4> face_cut{false, false, false, false};
    bool any_partial = false;
    Mat3 spin;
    bool have_spin = false;
    for (const auto& b : omega.balls) {
      bool inside = true, outside = false;
      std::array<bool, 4> cut{};
      for (int f = 0; f < 4; ++f) {
        const double d = n[f].dot(b.center) - off[f];
        if (d >= b.radius) outside = true;
        if (d > -b.radius) {
          inside = false;
          cut[f] = true;
        }
      }
      if (outside) continue;
      const double area = 4.0 * kPi * b.radius * b.radius;
      if (inside) {
        per += area;
        continue;
      }
      any_partial = true;
      for (int f = 0; f < 4; ++f) face_cut[f] = face_cut[f] || cut[f];
      if (!have_spin) {
        spin = rng.rotation();
        have_spin = true;
      }
      int hit = 0;
      for (const auto& u : fib) hit += inside_t(b.center + b.radius * (spin * u));
      per += area * hit / kSpherePoints;
    }
    if (any_partial) {
      for (int f = 0; f < 4; ++f) {
        if (!face_cut[f]) continue;
        const auto& fv = dp.faces[f].vertices;
        const Vec3 a = t + l * (R * fv[0]), b = t + l * (R * fv[1]), c = t + l * (R * fv[2]);
        const double area = 0.5 * (b - a).cross(c - a).norm();
        int hit = 0;
        for (int k = 0; k < kFacePoints; ++k) {
          double u = rng.uniform(), v = rng.uniform();
          if (u + v > 1.0) {
            u = 1.0 - u;
            v = 1.0 - v;
          }
          hit += in_union(omega, a + u * (b - a) + v * (c - a));
        }
        per += area * hit / kFacePoints;
      }
    }
    return weight * per;
  });
  mean_sigma(m, samples, &r.localized_mean, &r.sigma);
  r.rhs = r.localized_mean - r.correction;
  return r;
}

CoulombInequalityReport localized_coulomb_check(const BallUnion& omega, const Cube& lambda, double rho,
                                                    const Tetrahedron& delta_in, double l, std::size_t samples,
                                                    std::uint64_t seed) {
  if (!(l > 0)) throw ArgumentError("Coulomb inequality: l must be positive");
  if (samples < 2) throw ArgumentError("Coulomb inequality: need at least 2 samples");
  const Tetrahedron delta = checked_delta(delta_in);
  const Polyhedron dp = tetra_polyhedron(delta);
  const Domain lam = lambda;
  const LiquidDropBreakdown b = liquid_drop_energy(omega, lam, rho);

  CoulombInequalityReport r;
  r.samples = samples;
  r.lhs = b.total - b.perimeter;
  const double vol = lambda.side * lambda.side * lambda.side;
  const Vec3 lo = lambda.center - Vec3::Constant(0.5 * lambda.side);
  const Moments m = chunked(samples, seed, [&](Rng& rng) {
    const Vec3 x = lo + lambda.side * Vec3(rng.uniform(), rng.uniform(), rng.uniform());
    const Vec3 y = lo + lambda.side * Vec3(rng.uniform(), rng.uniform(), rng.uniform());
    const Mat3 R = rng.rotation();
    const Vec3 w = random_point_in(Domain(delta), rng);
    const double fx = (in_union(omega, x) ? 1.0 : 0.0) - rho;
    const double fy = (in_union(omega, y) ? 1.0 : 0.0) - rho;
    const double dist = (y - x).norm();
    if (fx * fy == 0.0 || dist == 0.0) return 0.0;
    const bool together = dp.contains(w + R.transpose() * (y - x) / l);
    return together ? 0.0 : 0.5 * vol * vol * fx * fy / dist;
  });
  double deficit;
  mean_sigma(m, samples, &deficit, &r.sigma);
  r.margin = deficit;
  r.rhs = r.lhs - deficit;
  r.holds = r.lhs >= r.rhs - 3.0 * r.sigma;
  return r;
}

LowerSimplexReport lower_simplex_rhs(double rho, double A, const FgcParams& p) {
  if (!(rho >= 0 && rho <= 1e-2)) throw ArgumentError("lower simplex: rho must lie in [0, 1e-2]");
  if (!(A >= 2 && A <= 6)) throw ArgumentError("lower simplex: A must lie in [2, 6]");
  LowerSimplexReport r;
  r.rho = rho;
  r.A = A;
  if (rho == 0.0) return r;
  r.side = A / std::cbrt(rho);
  const Domain simplex = scaled_translate(regular_tetrahedron(1.0), r.side);
  const FgcResult f = grand_canonical_F(simplex, rho, p);
  r.F = f.value;
  r.k = f.k;
  r.value = f.value / (std::cbrt(rho) * A * A * A);
  return r;
}

nlohmann::json to_json(const PerimeterIdentityReport& r) {
  return {{"lhs", r.lhs},         {"rhs", r.rhs},
          {"sigma", r.sigma},     {"localized_mean", r.localized_mean},
          {"correction", r.correction}, {"samples", r.samples},
          {"z_score", r.z_score()}};
}

nlohmann::json to_json(const CoulombInequalityReport& r) {
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"sigma", r.sigma},
          {"margin", r.margin}, {"holds", r.holds}, {"samples", r.samples}};
}

nlohmann::json to_json(const LowerSimplexReport& r) {
  return {{"rho", r.rho}, {"A", r.A}, {"side", r.side}, {"F", r.F}, {"value", r.value}, {"k", r.k},
          {"correction", "unquantified -C/A"}};
}

}  // namespace ldrop
