#include "ldrop/droplet/grand_canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "ldrop/core/parallel.hpp"
#include "ldrop/core/rng.hpp"
#include "ldrop/coulomb/pair.hpp"
#include "ldrop/coulomb/potentials.hpp"
#include "ldrop/droplet/constants.hpp"
#include "ldrop/droplet/energy.hpp"
#include "ldrop/geom/serialize.hpp"
#include "ldrop/jellium/optimize.hpp"

namespace ldrop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sigmoid(double w) { return 1.0 / (1.0 + std::exp(-w)); }

// Latent layout per ball: 4 barycentric logits (tetrahedra) or 3 coordinates,
// followed by one radius logit. Positions go through the point map of the
// jellium optimizer, applied to the container and then shrunk about the
// incenter by 1 - R / r_in.
struct BallAnsatz {
  Domain lambda;
  Insphere ins;
  double rmax;
  double rho, mu;
  int pw;  // position width
  std::optional<Tetrahedron> tet;
  Vec3 box_center = Vec3::Zero();
  double box_half = 0.0, ball_radius = 0.0;
  bool is_ball = false;

  BallAnsatz(const Domain& d, double rho_, double mu_, double rstar) : lambda(d), rho(rho_), mu(mu_) {
    ins = insphere(d);
    rmax = std::min(0.95 * ins.radius, 3.0 * rstar);
    tet = as_tetrahedron(d);
    pw = tet ? 4 : 3;
    if (auto b = as_ball(d)) {
      is_ball = true;
      ball_radius = b->radius;
      box_center = b->center;
    } else if (!tet) {
      const auto [lo, hi] = bounding_box(d);
      box_center = 0.5 * (lo + hi);
      box_half = 0.5 * (hi - lo)[0];
    }
  }

  int width() const { return pw + 1; }

  // y in the container and dy/dz (3 x pw)
  Vec3 position(const double* z, Eigen::Matrix<double, 3, 4>& J) const {
    J.setZero();
    if (tet) {
      const double m = std::max({z[0], z[1], z[2], z[3]});
      double w[4], s = 0.0;
      for (int i = 0; i < 4; ++i) s += (w[i] = std::exp(z[i] - m));
      Vec3 y = Vec3::Zero();
      for (int i = 0; i < 4; ++i) y += (w[i] / s) * tet->vertices[i];
      for (int i = 0; i < 4; ++i) J.col(i) = (w[i] / s) * (tet->vertices[i] - y);
      return y;
    }
    if (is_ball) {
      const Vec3 v(z[0], z[1], z[2]);
      const double r = v.norm(), t = std::tanh(r);
      const double f = r < 1e-8 ? 1.0 - r * r / 3.0 : t / r;
      Mat3 jj = ball_radius * Mat3::Identity();
      if (r >= 1e-8) {
        const Vec3 u = v / r;
        jj = ball_radius * (f * (Mat3::Identity() - u * u.transpose()) + (1 - t * t) * u * u.transpose());
      }
      J.leftCols<3>() = jj;
      return box_center + ball_radius * f * v;
    }
    Vec3 y;
    for (int d = 0; d < 3; ++d) {
      y[d] = box_center[d] + box_half * std::tanh(z[d]);
      const double c = std::cosh(z[d]);
      J(d, d) = box_half / (c * c);
    }
    return y;
  }

  void invert_position(const Vec3& y, double* z) const {
    if (tet) {
      Mat3 m;
      for (int i = 0; i < 3; ++i) m.col(i) = tet->vertices[i] - tet->vertices[3];
      const Vec3 l = m.colPivHouseholderQr().solve(y - tet->vertices[3]);
      const double lam[4] = {l[0], l[1], l[2], 1.0 - l.sum()};
      for (int i = 0; i < 4; ++i) z[i] = std::log(std::max(lam[i], 1e-9));
      return;
    }
    if (is_ball) {
      const Vec3 v = (y - box_center) / ball_radius;
      const double r = v.norm(), a = std::atanh(std::min(r, 1.0 - 1e-9));
      for (int d = 0; d < 3; ++d) z[d] = r > 0 ? v[d] * a / r : 0.0;
      return;
    }
    for (int d = 0; d < 3; ++d)
      z[d] = std::atanh(std::clamp((y[d] - box_center[d]) / box_half, -1.0 + 1e-9, 1.0 - 1e-9));
  }

  BallUnion decode(const std::vector<double>& z) const {
    BallUnion u;
    const std::size_t k = z.size() / width();
    Eigen::Matrix<double, 3, 4> J;
    for (std::size_t i = 0; i < k; ++i) {
      const double* zi = &z[i * width()];
      const double R = rmax * sigmoid(zi[pw]);
      const Vec3 y = position(zi, J);
      u.balls.push_back({R, ins.center + (1.0 - R / ins.radius) * (y - ins.center)});
    }
    return make_ball_union(u.balls);
  }

  std::vector<double> encode(const std::vector<Ball>& balls) const {
    std::vector<double> z(balls.size() * width());
    for (std::size_t i = 0; i < balls.size(); ++i) {
      double* zi = &z[i * width()];
      const double R = std::clamp(balls[i].radius, 1e-6 * rmax, (1 - 1e-9) * rmax);
      const Vec3 y = ins.center + (balls[i].center - ins.center) / (1.0 - R / ins.radius);
      invert_position(y, zi);
      const double s = R / rmax;
      zi[pw] = std::log(s / (1.0 - s));
    }
    return z;
  }

  // E - mu |Omega| without the constant background term
  double value(const std::vector<double>& z, std::vector<double>* g) const {
    const std::size_t k = z.size() / width();
    std::vector<Vec3> c(k), y(k);
    std::vector<double> R(k), Q(k), dRdw(k);
    std::vector<Eigen::Matrix<double, 3, 4>> J(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double* zi = &z[i * width()];
      const double s = sigmoid(zi[pw]);
      R[i] = rmax * s;
      dRdw[i] = rmax * s * (1 - s);
      Q[i] = 4.0 * kPi / 3.0 * R[i] * R[i] * R[i];
      y[i] = position(zi, J[i]);
      c[i] = ins.center + (1.0 - R[i] / ins.radius) * (y[i] - ins.center);
    }
    std::vector<Vec3> gc(k, Vec3::Zero());
    std::vector<double> gR(k, 0.0);
    double e = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double r = R[i], dQ = 4.0 * kPi * r * r;
      e += 4.0 * kPi * r * r + 0.6 * Q[i] * Q[i] / r - mu * Q[i];
      gR[i] += 8.0 * kPi * r + 0.6 * (2.0 * Q[i] * dQ / r - Q[i] * Q[i] / (r * r)) - mu * dQ;
      for (std::size_t j = i + 1; j < k; ++j) {
        const Vec3 d = c[i] - c[j];
        const double dist = d.norm();
        if (dist <= R[i] + R[j]) return kInf;
        e += Q[i] * Q[j] / dist;
        const Vec3 f = (-Q[i] * Q[j] / (dist * dist * dist)) * d;
        gc[i] += f;
        gc[j] -= f;
        gR[i] += dQ * Q[j] / dist;
        gR[j] += 4.0 * kPi * R[j] * R[j] * Q[i] / dist;
      }
      if (rho > 0) {
        const auto pv = domain_potential_with_gradient(lambda, c[i]);
        e -= rho * Q[i] * (pv.value - 0.4 * kPi * r * r);
        gc[i] -= rho * Q[i] * pv.gradient;
        gR[i] -= rho * (dQ * (pv.value - 0.4 * kPi * r * r) - Q[i] * 0.8 * kPi * r);
      }
    }
    if (g) {
      g->assign(z.size(), 0.0);
      for (std::size_t i = 0; i < k; ++i) {
        const double shrink = 1.0 - R[i] / ins.radius;
        const Eigen::Vector4d gz = shrink * J[i].transpose() * gc[i];
        for (int a = 0; a < pw; ++a) (*g)[i * width() + a] = gz[a];
        const double dcdR = -gc[i].dot(y[i] - ins.center) / ins.radius;
        (*g)[i * width() + pw] = (gR[i] + dcdR) * dRdw[i];
      }
    }
    return e;
  }
};

}  // namespace

double grand_canonical_objective(const BallUnion& omega, const Domain& lambda, double rho, double tol) {
  const auto b = liquid_drop_energy(omega, lambda, rho, tol);
  return b.total - ball_optimum().mu_star * b.volume;
}

FgcResult grand_canonical_F(const Domain& lambda, double rho, const FgcParams& p) {
  validate(lambda);
  if (!(rho >= 0.0 && rho <= 0.5)) throw ArgumentError("grand-canonical F: rho must lie in [0, 1/2]");
  if (p.starts < 1) throw ArgumentError("grand-canonical F: need at least one start");
  const DropletConstants dc = ball_optimum();
  const double vol = domain_measure(lambda).volume;
  const double charge = rho * vol;
  int kmin = p.k_min, kmax = p.k_max;
  if (kmin < 0 || kmax < 0) {
    const double target = charge / dc.m_star;
    const int pad = std::max(2, int(std::ceil(std::pow(charge, 2.0 / 3.0))));
    if (kmin < 0) kmin = rho == 0.0 ? 0 : std::max(0, int(std::floor(target)) - pad);
    if (kmax < 0) kmax = rho == 0.0 ? 1 : int(std::ceil(target)) + pad;
  }
  if (kmin > kmax) throw ArgumentError("grand-canonical F: empty ball-count window");

  const BallAnsatz ans(lambda, rho, dc.mu_star, dc.R_star);
  FgcResult out;
  out.background_self = rho > 0 ? 0.5 * rho * rho * domain_pair_coulomb(lambda, lambda, p.tol) : 0.0;
  const int counts = kmax - kmin + 1;

  struct Slot {
    double value = kInf;
    std::vector<Ball> balls;
    bool converged = false;
  };
  std::vector<Slot> slots(std::size_t(counts) * p.starts);
  std::optional<FiniteJellium> points;
  if (rho > 0) points.emplace(lambda, dc.m_star, rho, p.tol);
  parallel_for(slots.size(), [&](std::size_t idx) {
    const int k = kmin + int(idx / p.starts);
    const int start = int(idx % p.starts);
    Slot& slot = slots[idx];
    if (k == 0) {
      slot.value = 0.0;
      slot.converged = true;
      return;
    }
    Rng rng(stream_seed(p.seed, idx));
    std::vector<Vec3> centers;
    if (start == 0 && rho > 0) {
      // point charges m_* in the same background: the droplet centers of the dilute limit
      const FiniteJellium& fj = *points;
      PointConfiguration seed;
      seed.q = dc.m_star;
      for (int i = 0; i < k; ++i) seed.x.push_back(random_point_in(lambda, rng));
      centers = minimize_finite(seed, fj).cfg.x;
    } else {
      for (int i = 0; i < k; ++i) centers.push_back(random_point_in(lambda, rng));
    }
    // radii: R_* where room allows
    std::vector<Ball> balls;
    for (int i = 0; i < k; ++i) {
      double room = ans.rmax;
      for (int j = 0; j < k; ++j)
        if (j != i) room = std::min(room, 0.45 * (centers[i] - centers[j]).norm());
      balls.push_back({std::max(1e-3 * ans.rmax, std::min(dc.R_star, room)), centers[i]});
    }
    std::vector<double> z = ans.encode(balls);
    std::vector<double> scratch;
    if (!std::isfinite(ans.value(z, &scratch))) {
      // shrink until disjoint
      for (int tries = 0; tries < 60 && !std::isfinite(ans.value(z, &scratch)); ++tries)
        for (int i = 0; i < k; ++i) z[i * ans.width() + ans.pw] -= 0.5;
      if (!std::isfinite(ans.value(z, &scratch))) return;
    }
    Objective f = [&](const std::vector<double>& v, std::vector<double>& g) { return ans.value(v, &g); };
    LbfgsParams lp = p.lbfgs;
    if (lp.max_step <= 0) lp.max_step = 0.5;
    if (lp.gradient_tol == LbfgsParams{}.gradient_tol) lp.gradient_tol = 1e-7;
    const LbfgsResult r = lbfgs_minimize(f, z, lp);
    slot.value = r.f;
    slot.balls = ans.decode(r.x).balls;
    slot.converged = r.converged;
  });

  bool first = true;
  for (int c = 0; c < counts; ++c) {
    const Slot* best = nullptr;
    for (int s = 0; s < p.starts; ++s) {
      const Slot& sl = slots[std::size_t(c) * p.starts + s];
      if (!best || sl.value < best->value) best = &sl;
    }
    const double v = best->value + out.background_self;
    out.rows.push_back({kmin + c, v, best->converged});
    if (std::isfinite(v) && (first || v < out.value)) {
      out.value = v;
      out.k = kmin + c;
      out.omega = make_ball_union(best->balls);
      first = false;
    }
  }
  if (first) throw NumericError("grand-canonical F: no feasible start in the ball-count window");
  return out;
}

nlohmann::json to_json(const FgcResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) rows.push_back({{"k", row.k}, {"value", row.value}, {"converged", row.converged}});
  return {{"value", r.value}, {"k", r.k}, {"omega", to_json(r.omega)}, {"rows", rows},
          {"background_self", r.background_self}};
}

}  // namespace ldrop
