#include "ldrop/jellium/optimize.hpp"

#include <cmath>
#include <limits>

#include "ldrop/core/parallel.hpp"
#include "ldrop/geom/lattice.hpp"

namespace ldrop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> flatten(const std::vector<Vec3>& x) {
  std::vector<double> v(3 * x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int d = 0; d < 3; ++d) v[3 * i + d] = x[i][d];
  return v;
}

std::vector<Vec3> unflatten(const std::vector<double>& v) {
  std::vector<Vec3> x(v.size() / 3);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = Vec3(v[3 * i], v[3 * i + 1], v[3 * i + 2]);
  return x;
}

double min_pair_distance(const std::vector<Vec3>& x) {
  double best = kInf;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) best = std::min(best, (x[i] - x[j]).norm());
  return best;
}

// Smooth surjection from latent coordinates onto the open domain.
struct ContainerMap {
  enum Kind { Tetra, Box, Sphere } kind;
  std::array<Vec3, 4> v{};
  Vec3 center = Vec3::Zero();
  double half = 0.0;  // cube half side or ball radius
  int width = 3;      // latent coordinates per point

  explicit ContainerMap(const Domain& d) {
    if (auto t = as_tetrahedron(d)) {
      kind = Tetra;
      v = t->vertices;
      width = 4;
    } else if (auto b = as_ball(d)) {
      kind = Sphere;
      center = b->center;
      half = b->radius;
    } else {
      const auto [lo, hi] = bounding_box(d);
      kind = Box;
      center = 0.5 * (lo + hi);
      half = 0.5 * (hi - lo)[0];
    }
  }

  Vec3 map(const double* z, Mat3* jac, Eigen::Matrix<double, 3, 4>* tjac) const {
    switch (kind) {
      case Tetra: {
        double m = std::max({z[0], z[1], z[2], z[3]});
        std::array<double, 4> w{};
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += (w[i] = std::exp(z[i] - m));
        Vec3 x = Vec3::Zero();
        for (int i = 0; i < 4; ++i) x += (w[i] / s) * v[i];
        if (tjac)
          for (int i = 0; i < 4; ++i) tjac->col(i) = (w[i] / s) * (v[i] - x);
        return x;
      }
      case Box: {
        Vec3 x;
        for (int d = 0; d < 3; ++d) x[d] = center[d] + half * std::tanh(z[d]);
        if (jac) {
          jac->setZero();
          for (int d = 0; d < 3; ++d) {
            const double c = std::cosh(z[d]);
            (*jac)(d, d) = half / (c * c);
          }
        }
        return x;
      }
      case Sphere: {
        const Vec3 y(z[0], z[1], z[2]);
        const double r = y.norm();
        const double t = std::tanh(r);
        const double f = r < 1e-8 ? 1.0 - r * r / 3.0 : t / r;
        if (jac) {
          const double sech2 = 1.0 - t * t;
          if (r < 1e-8) {
            *jac = half * Mat3::Identity();
          } else {
            const Vec3 u = y / r;
            *jac = half * (f * (Mat3::Identity() - u * u.transpose()) + sech2 * u * u.transpose());
          }
        }
        return center + half * f * y;
      }
    }
    return center;
  }

  // latent coordinates of an interior point
  void invert(const Vec3& x, double* z) const {
    switch (kind) {
      case Tetra: {
        Mat3 m;
        for (int i = 0; i < 3; ++i) m.col(i) = v[i] - v[3];
        const Vec3 l = m.colPivHouseholderQr().solve(x - v[3]);
        const double lam[4] = {l[0], l[1], l[2], 1.0 - l.sum()};
        for (int i = 0; i < 4; ++i) z[i] = std::log(std::max(lam[i], 1e-12));
        return;
      }
      case Box:
        for (int d = 0; d < 3; ++d)
          z[d] = std::atanh(std::clamp((x[d] - center[d]) / half, -1.0 + 1e-12, 1.0 - 1e-12));
        return;
      case Sphere: {
        const Vec3 y = (x - center) / half;
        const double r = y.norm();
        const double a = std::atanh(std::min(r, 1.0 - 1e-12));
        for (int d = 0; d < 3; ++d) z[d] = r > 0 ? y[d] * a / r : 0.0;
        return;
      }
    }
  }
};

}  // namespace

LocalResult minimize_periodic(const PointConfiguration& seed, const PeriodicJellium& ev,
                              const LocalParams& p) {
  const std::size_t n = seed.size();
  const double spacing = ev.side() / std::cbrt(double(std::max<std::size_t>(n, 1)));
  const double rmin = p.min_separation * spacing;
  Objective f = [&](const std::vector<double>& v, std::vector<double>& g) {
    const auto x = unflatten(v);
    if (n >= 2 && ev.min_separation(x) < rmin) return kInf;
    std::vector<Vec3> gr;
    const double e = ev.pair_energy(x, &gr);
    g = flatten(gr);
    return e;
  };
  Normalizer wrap = [&](std::vector<double>& v) {
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 w = ev.wrap(Vec3(v[3 * i], v[3 * i + 1], v[3 * i + 2]));
      for (int d = 0; d < 3; ++d) v[3 * i + d] = w[d];
    }
  };
  std::vector<double> x0 = flatten(seed.x);
  wrap(x0);
  LbfgsParams lp = p.lbfgs;
  if (lp.max_step <= 0) lp.max_step = 0.25 * spacing;
  LbfgsResult r = lbfgs_minimize(f, x0, lp, wrap);
  LocalResult out;
  out.cfg.q = seed.q;
  out.cfg.x = unflatten(r.x);
  out.energy = r.f;
  out.iterations = r.iterations;
  out.converged = r.converged;
  out.message = r.message;
  out.trace = std::move(r.trace);
  return out;
}

LocalResult minimize_finite(const PointConfiguration& seed, const FiniteJellium& ev, const LocalParams& p) {
  const std::size_t n = seed.size();
  const ContainerMap cm(ev.domain());
  const int w = cm.width;
  const double spacing = std::cbrt(domain_measure(ev.domain()).volume / double(std::max<std::size_t>(n, 1)));
  const double rmin = p.min_separation * spacing;
  auto positions = [&](const std::vector<double>& z) {
    std::vector<Vec3> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = cm.map(&z[w * i], nullptr, nullptr);
    return x;
  };
  Objective f = [&](const std::vector<double>& z, std::vector<double>& g) {
    std::vector<Vec3> x(n);
    std::vector<Mat3> jac(n);
    std::vector<Eigen::Matrix<double, 3, 4>> tjac(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = cm.map(&z[w * i], &jac[i], &tjac[i]);
    if (n >= 2 && min_pair_distance(x) < rmin) return kInf;
    std::vector<Vec3> gx;
    const double e = ev.energy(x, &gx);
    g.assign(z.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (w == 4) {
        const Eigen::Vector4d gz = tjac[i].transpose() * gx[i];
        for (int k = 0; k < 4; ++k) g[w * i + k] = gz[k];
      } else {
        const Vec3 gz = jac[i].transpose() * gx[i];
        for (int k = 0; k < 3; ++k) g[w * i + k] = gz[k];
      }
    }
    return e;
  };
  std::vector<double> z0(w * n);
  for (std::size_t i = 0; i < n; ++i) cm.invert(seed.x[i], &z0[w * i]);
  LbfgsParams lp = p.lbfgs;
  if (lp.max_step <= 0) lp.max_step = 0.5;
  LbfgsResult r = lbfgs_minimize(f, z0, lp);
  LocalResult out;
  out.cfg.q = seed.q;
  out.cfg.x = positions(r.x);
  out.energy = r.f;
  out.iterations = r.iterations;
  out.converged = r.converged;
  out.message = r.message;
  out.trace = std::move(r.trace);
  return out;
}

Vec3 random_point_in(const Domain& d, Rng& rng) {
  if (auto t = as_tetrahedron(d)) {
    double e[4], s = 0.0;
    for (double& v : e) s += (v = -std::log(1.0 - rng.uniform()));
    Vec3 x = Vec3::Zero();
    for (int i = 0; i < 4; ++i) x += (e[i] / s) * t->vertices[i];
    return x;
  }
  const auto [lo, hi] = bounding_box(d);
  for (;;) {
    const Vec3 x(rng.uniform(lo[0], hi[0]), rng.uniform(lo[1], hi[1]), rng.uniform(lo[2], hi[2]));
    if (contains_strictly(d, x)) return x;
  }
}

BasinHopResult basin_hop_periodic(std::size_t n, double density, const BasinHopParams& p) {
  if (n < 1) throw ArgumentError("basin hop: need at least one particle");
  if (!(density > 0)) throw ArgumentError("basin hop: density must be positive");
  if (p.restarts < 1) throw ArgumentError("basin hop: need at least one restart");
  const double side = std::cbrt(double(n) / density);
  const double spacing = side / std::cbrt(double(n));
  const PeriodicJellium ev(side, n);
  const double self = double(n) * madelung_z3() / (2.0 * side);

  struct Slot {
    LocalResult best;
    std::uint64_t seed;
  };
  std::vector<Slot> slots(p.restarts);
  parallel_for(std::size_t(p.restarts), [&](std::size_t r) {
    const std::uint64_t s = stream_seed(p.seed, r);
    Rng rng(s);
    PointConfiguration start;
    LatticeKind kind;
    int k;
    if (r == 0 && p.crystal_seed && crystal_for_count(n, &kind, &k)) {
      start = cubic_crystal(kind, k, side);
    } else {
      do {
        start = random_periodic_configuration(n, side, rng);
      } while (n >= 2 && ev.min_separation(start.x) < 2.0 * p.local.min_separation * spacing);
    }
    LocalResult cur = minimize_periodic(start, ev, p.local);
    LocalResult best = cur;
    const double temp = p.temperature / spacing;
    for (int h = 0; h < p.hops; ++h) {
      PointConfiguration trial = cur.cfg;
      for (auto& x : trial.x)
        x += p.step * spacing * Vec3(rng.normal(), rng.normal(), rng.normal());
      LocalResult next;
      try {
        next = minimize_periodic(trial, ev, p.local);
      } catch (const ArgumentError&) {
        continue;  // perturbation landed inside the separation barrier
      }
      const double u = rng.uniform();
      if (next.energy <= cur.energy || u < std::exp(-(next.energy - cur.energy) / temp)) cur = next;
      if (cur.energy < best.energy) best = cur;
    }
    slots[r] = {std::move(best), s};
  });

  BasinHopResult out;
  for (int r = 0; r < p.restarts; ++r) {
    const auto& s = slots[r];
    out.restarts.push_back({r, s.seed, s.best.energy, (s.best.energy + self) / double(n)});
    if (r == 0 || s.best.energy < out.best_energy) {
      out.best_energy = s.best.energy;
      out.best = s.best.cfg;
      out.best_restart = r;
    }
  }
  out.best_per_particle = (out.best_energy + self) / double(n);
  return out;
}

}  // namespace ldrop
