#include "ldrop/thermo/quadrupole_layer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "ldrop/core/parallel.hpp"
#include "ldrop/coulomb/potentials.hpp"

namespace ldrop {

namespace {

using Index = std::array<long, 3>;

enum class Side { Inside, Outside, Straddle };

// Lambda as a ball or an axis-aligned box; boxes below are open cells [lo, lo + s).
struct Shape {
  bool is_ball = true;
  Vec3 c = Vec3::Zero();
  double R = 0.0;
  Vec3 A = Vec3::Zero(), B = Vec3::Zero();

  Side classify(const Vec3& lo, double s) const {
    const Vec3 hi = lo + Vec3::Constant(s);
    if (is_ball) {
      const Vec3 near = c.cwiseMax(lo).cwiseMin(hi);
      Vec3 far;
      for (int i = 0; i < 3; ++i) far[i] = std::abs(lo[i] - c[i]) > std::abs(hi[i] - c[i]) ? lo[i] : hi[i];
      if ((far - c).norm() <= R) return Side::Inside;
      if ((near - c).norm() >= R) return Side::Outside;
      return Side::Straddle;
    }
    bool inside = true;
    for (int i = 0; i < 3; ++i) {
      if (hi[i] <= A[i] || lo[i] >= B[i]) return Side::Outside;
      if (lo[i] < A[i] || hi[i] > B[i]) inside = false;
    }
    return inside ? Side::Inside : Side::Straddle;
  }

  // distance from a cell outside Lambda to the boundary
  double outside_distance(const Vec3& lo, double s) const {
    const Vec3 hi = lo + Vec3::Constant(s);
    if (is_ball) return (c.cwiseMax(lo).cwiseMin(hi) - c).norm() - R;
    Vec3 gap;
    for (int i = 0; i < 3; ++i) gap[i] = std::max({0.0, A[i] - hi[i], lo[i] - B[i]});
    return gap.norm();
  }

  bool contains_closed(const Vec3& x) const {
    if (is_ball) return (x - c).norm() <= R;
    return (x.array() >= A.array()).all() && (x.array() <= B.array()).all();
  }
};

Shape make_shape(const Domain& d, double eps) {
  Shape s;
  if (auto b = as_ball(d)) {
    s.c = b->center;
    s.R = b->radius;
    if (!(eps <= s.R / 8)) throw ArgumentError("quadrupole layer: eps must be at most R / 8 for a ball");
    return s;
  }
  auto p = as_polyhedron(d);
  if (!p) throw ArgumentError("quadrupole layer: Lambda must be a ball or a cube");
  const auto [lo, hi] = bounding_box(d);
  const double boxvol = (hi - lo).prod();
  if (std::abs(boxvol - p->volume()) > 1e-9 * boxvol)
    throw ArgumentError("quadrupole layer: Lambda must be a ball or an axis-aligned cube");
  s.is_ball = false;
  s.A = lo;
  s.B = hi;
  if (!(eps <= (hi - lo).minCoeff() / 8)) throw ArgumentError("quadrupole layer: eps must be at most side / 8");
  return s;
}

double box_distance(const Box& a, const Box& b) {
  Vec3 gap;
  for (int i = 0; i < 3; ++i)
    gap[i] = std::max({0.0, a.lo[i] - (b.lo[i] + b.side), b.lo[i] - (a.lo[i] + a.side)});
  return gap.norm();
}

struct Moments {
  double m0 = 0.0;
  Vec3 m1 = Vec3::Zero();
  Mat3 m2 = Mat3::Zero();

  void add(const Box& b, double w, const Vec3& origin) {
    const Vec3 lo = b.lo - origin, hi = lo + Vec3::Constant(b.side);
    const Vec3 c = 0.5 * (lo + hi);
    const double v = b.volume();
    m0 += w * v;
    m1 += w * v * c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m2(i, j) += i == j ? w * b.side * b.side * (hi[i] * hi[i] * hi[i] - lo[i] * lo[i] * lo[i]) / 3.0
                           : w * v * c[i] * c[j];
  }
};

template <class F>
void for_each_box(const QuadrupolePiece& p, double rho, F f) {
  f(p.omega, 1.0);
  f(p.host, -rho);
  for (const auto& b : p.partial) f(b, -rho);
}

}  // namespace

PieceDiagnostics piece_diagnostics(const QuadrupolePiece& piece, double rho, double eps, int K) {
  (void)K;
  Moments m;
  for_each_box(piece, rho, [&](const Box& b, double w) { m.add(b, w, piece.com); });
  PieceDiagnostics d;
  d.charge = m.m0;
  d.dipole = m.m1;
  d.quadrupole = m.m2 - m.m2.trace() / 3.0 * Mat3::Identity();
  d.quadrupole = 0.5 * (d.quadrupole + d.quadrupole.transpose()).eval();
  d.perimeter_constant = 6.0 * piece.omega.side * piece.omega.side / (std::cbrt(rho * rho) * eps * eps);
  d.shift = (piece.com - piece.host.center()).norm();
  return d;
}

double piece_potential(const QuadrupolePiece& piece, double rho, const Vec3& x) {
  double v = 0.0;
  for_each_box(piece, rho, [&](const Box& b, double w) {
    v += w * potential_box(b.lo, b.lo + Vec3::Constant(b.side), x);
  });
  return v;
}

double piece_decay_exponent(const QuadrupolePiece& piece, double rho, double eps, double r_lo, double r_hi) {
  if (!(r_lo > 0 && r_hi > r_lo)) throw ArgumentError("decay exponent: need 0 < r_lo < r_hi");
  Eigen::SelfAdjointEigenSolver<Mat3> es(piece.diag.quadrupole);
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(es.eigenvalues()[i]) > std::abs(es.eigenvalues()[k])) k = i;
  const Vec3 u = es.eigenvectors().col(k).normalized();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 7;
  for (int i = 0; i < n; ++i) {
    const double r = r_lo * eps * std::pow(r_hi / r_lo, double(i) / (n - 1));
    const double phi = std::abs(piece_potential(piece, rho, piece.com + r * u));
    const double lx = std::log(r), ly = std::log(std::max(phi, 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

QuadrupoleLayer quadrupole_layer(const Domain& lambda, const QuadrupoleLayerParams& p) {
  if (!(p.eps > 0)) throw ArgumentError("quadrupole layer: eps must be positive");
  if (!(p.rho > 0 && p.rho <= 0.5)) throw ArgumentError("quadrupole layer: rho must lie in (0, 1/2]");
  if (p.K < 1) throw ArgumentError("quadrupole layer: K must be at least 1");
  if (p.subdivision < 1) throw ArgumentError("quadrupole layer: subdivision must be at least 1");
  const Shape shape = make_shape(lambda, p.eps);
  const double eps = p.eps, small = eps / p.K, fine = small / p.subdivision;
  const double slack = 1e-12 * eps;

  auto cell = [&](const Index& z) { return Box{eps * Vec3(z[0], z[1], z[2]) - Vec3::Constant(0.5 * eps), eps}; };

  // large cells of the layer
  const auto [blo, bhi] = bounding_box(lambda);
  Index zlo, zhi;
  for (int i = 0; i < 3; ++i) {
    zlo[i] = long(std::floor((blo[i] - 2 * eps) / eps)) - 1;
    zhi[i] = long(std::ceil((bhi[i] + 2 * eps) / eps)) + 1;
  }
  std::map<Index, int> interior;  // outside cells -> piece slot
  std::vector<Index> boundary;
  for (long i = zlo[0]; i <= zhi[0]; ++i)
    for (long j = zlo[1]; j <= zhi[1]; ++j)
      for (long k = zlo[2]; k <= zhi[2]; ++k) {
        const Index z{i, j, k};
        const Box b = cell(z);
        const Side s = shape.classify(b.lo, eps);
        if (s == Side::Inside) continue;
        if (s == Side::Straddle) {
          boundary.push_back(z);
        } else if (shape.outside_distance(b.lo, eps) <= eps + slack) {
          interior.emplace(z, -1);
        }
      }

  QuadrupoleLayer out;
  out.params = p;
  std::vector<Index> host_index;
  for (auto& [z, slot] : interior) {
    slot = int(out.pieces.size());
    host_index.push_back(z);
    QuadrupolePiece q;
    q.kind = PieceKind::LargeAlone;
    q.host = cell(z);
    out.pieces.push_back(q);
  }

  // partial small cubes and the outside cells they may join
  struct Unit {
    std::vector<Box> kept;
    double volume = 0.0;
    Vec3 moment = Vec3::Zero();  // absolute first moment
    std::vector<int> cand;       // slots, ordered by gap, center distance, index
    int host = -1;
  };
  std::vector<QuadrupolePiece> smalls;
  std::vector<Unit> units;
  const double window = p.association_window * eps;
  for (const Index& z : boundary) {
    const Box big = cell(z);
    for (int a = 0; a < p.K; ++a)
      for (int b = 0; b < p.K; ++b)
        for (int c = 0; c < p.K; ++c) {
          const Box sc{big.lo + small * Vec3(a, b, c), small};
          const Side s = shape.classify(sc.lo, small);
          if (s == Side::Inside) continue;
          if (s == Side::Outside) {
            QuadrupolePiece q;
            q.kind = PieceKind::SmallFull;
            q.host = sc;
            smalls.push_back(q);
            continue;
          }
          Unit u;
          for (int i = 0; i < p.subdivision; ++i)
            for (int j = 0; j < p.subdivision; ++j)
              for (int k = 0; k < p.subdivision; ++k) {
                const Box f{sc.lo + fine * Vec3(i, j, k), fine};
                if (shape.contains_closed(f.center())) continue;
                u.kept.push_back(f);
                u.volume += f.volume();
                u.moment += f.volume() * f.center();
              }
          if (u.kept.empty()) continue;
          struct Candidate {
            double gap, center;
            Index z;
            int slot;
            bool operator<(const Candidate& o) const {
              if (gap != o.gap) return gap < o.gap;
              if (center != o.center) return center < o.center;
              return z < o.z;
            }
          };
          std::vector<Candidate> cand;
          double dmin = -1.0;
          for (long r = 1;; ++r) {
            if (dmin >= 0 && (r - 1) * eps > dmin + window + slack) break;
            if (r > 64) throw NumericError("quadrupole layer: no outside cell near a boundary cell");
            for (long i = z[0] - r; i <= z[0] + r; ++i)
              for (long j = z[1] - r; j <= z[1] + r; ++j)
                for (long k = z[2] - r; k <= z[2] + r; ++k) {
                  if (std::max({std::abs(i - z[0]), std::abs(j - z[1]), std::abs(k - z[2])}) != r) continue;
                  auto it = interior.find(Index{i, j, k});
                  if (it == interior.end()) continue;
                  const Box host = cell(it->first);
                  const double d = box_distance(host, sc);
                  cand.push_back({d, (host.center() - sc.center()).norm(), it->first, it->second});
                  if (dmin < 0 || d < dmin) dmin = d;
                }
          }
          std::sort(cand.begin(), cand.end());
          for (const auto& c : cand)
            if (c.gap <= dmin + window + slack) u.cand.push_back(c.slot);
          units.push_back(std::move(u));
        }
  }

  // Omega must fit in the host: max_i |com_i - center_i| + side / 2 < eps / 2. The
  // assignment greedily keeps this margin small, then single moves lower the larger of the
  // two margins they touch until nothing improves.
  const std::size_t hosts = out.pieces.size();
  std::vector<double> load(hosts, 0.0);
  std::vector<Vec3> moment(hosts, Vec3::Zero());  // about the host center
  const double eps3 = eps * eps * eps;
  auto margin = [&](int h, double dv, const Vec3& dm) {
    const double v = eps3 + load[h] + dv;
    const Vec3 m = moment[h] + dm;
    return (m / v).cwiseAbs().maxCoeff() + 0.5 * std::cbrt(p.rho * v);
  };
  auto rel = [&](const Unit& u, int h) { return Vec3(u.moment - u.volume * out.pieces[h].host.center()); };
  for (auto& u : units) {
    double best = 0.0;
    for (int h : u.cand) {
      const double m = margin(h, u.volume, rel(u, h));
      if (u.host < 0 || m < best - slack) {
        u.host = h;
        best = m;
      }
    }
    load[u.host] += u.volume;
    moment[u.host] += rel(u, u.host);
  }
  for (int pass = 0; pass < 50; ++pass) {
    bool moved = false;
    for (auto& u : units) {
      const int h = u.host;
      const Vec3 mh = rel(u, h);
      const double before_h = margin(h, 0.0, Vec3::Zero()), after_h = margin(h, -u.volume, -mh);
      for (int c : u.cand) {
        if (c == h) continue;
        const Vec3 mc = rel(u, c);
        const double before = std::max(before_h, margin(c, 0.0, Vec3::Zero()));
        const double after = std::max(after_h, margin(c, u.volume, mc));
        if (after < before - slack) {
          load[h] -= u.volume;
          moment[h] -= mh;
          load[c] += u.volume;
          moment[c] += mc;
          u.host = c;
          moved = true;
          break;
        }
      }
    }
    if (!moved) break;
  }
  std::vector<int> attached(hosts, 0);
  for (const auto& u : units) {
    auto& host = out.pieces[u.host];
    host.kind = PieceKind::LargeMerged;
    host.partial.insert(host.partial.end(), u.kept.begin(), u.kept.end());
    ++attached[u.host];
  }
  for (auto& q : smalls) out.pieces.push_back(std::move(q));
  attached.resize(out.pieces.size(), 0);

  const double r13 = std::cbrt(p.rho);
  for (std::size_t a = 0; a < out.pieces.size(); ++a) {
    auto& q = out.pieces[a];
    const Vec3 hc = q.host.center();
    Moments m;
    m.add(q.host, 1.0, hc);
    for (const auto& b : q.partial) m.add(b, 1.0, hc);
    q.volume = m.m0;
    q.com = hc + m.m1 / m.m0;
    const double side = q.partial.empty() ? r13 * q.host.side : std::cbrt(p.rho * q.volume);
    q.omega = Box{q.com - Vec3::Constant(0.5 * side), side};
    const Vec3 off = (q.com - hc).cwiseAbs();
    if (!((off.array() + 0.5 * side).maxCoeff() < 0.5 * q.host.side))
      throw ArgumentError("quadrupole layer: Omega of piece " + std::to_string(a) + " (host center " +
                          std::to_string(hc[0]) + ", " + std::to_string(hc[1]) + ", " + std::to_string(hc[2]) +
                          ") leaves its host cube; increase K");
    q.diag = piece_diagnostics(q, p.rho, eps, p.K);
    ++out.count[int(q.kind) - 1];
    out.max_perimeter_constant = std::max(out.max_perimeter_constant, q.diag.perimeter_constant);
    out.max_shift_constant = std::max(out.max_shift_constant, q.diag.shift * (p.K + 1) / eps);
    out.max_dipole = std::max(out.max_dipole, q.diag.dipole.norm());
    out.max_charge = std::max(out.max_charge, std::abs(q.diag.charge));
    out.max_attached = std::max(out.max_attached, attached[a] / double(p.K * p.K));
    out.layer_volume += q.volume;
  }
  return out;
}

nlohmann::json to_json(const QuadrupolePiece& p) {
  auto box = [](const Box& b) { return nlohmann::json{{"lo", {b.lo[0], b.lo[1], b.lo[2]}}, {"side", b.side}}; };
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& b : p.partial) parts.push_back(box(b));
  nlohmann::json q = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) q.push_back({p.diag.quadrupole(i, 0), p.diag.quadrupole(i, 1), p.diag.quadrupole(i, 2)});
  return {{"kind", int(p.kind)},
          {"host", box(p.host)},
          {"partial", parts},
          {"omega", box(p.omega)},
          {"volume", p.volume},
          {"charge", p.diag.charge},
          {"dipole", {p.diag.dipole[0], p.diag.dipole[1], p.diag.dipole[2]}},
          {"quadrupole", q},
          {"perimeter_constant", p.diag.perimeter_constant},
          {"decay_exponent", p.diag.decay_exponent}};
}

nlohmann::json summary_json(const QuadrupoleLayer& l) {
  return {{"eps", l.params.eps},
          {"K", l.params.K},
          {"rho", l.params.rho},
          {"subdivision", l.params.subdivision},
          {"pieces", l.pieces.size()},
          {"small_full", l.count[0]},
          {"large_alone", l.count[1]},
          {"large_merged", l.count[2]},
          {"max_charge", l.max_charge},
          {"max_dipole", l.max_dipole},
          {"max_perimeter_constant", l.max_perimeter_constant},
          {"max_shift_constant", l.max_shift_constant},
          {"max_attached_over_K2", l.max_attached},
          {"layer_volume", l.layer_volume}};
}

}  // namespace ldrop
