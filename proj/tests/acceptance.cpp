// One line per acceptance criterion: PASS/FAIL, wall time, key numbers.
#include <chrono>
#include <cstdarg>
#include <thread>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "ldrop/core/parallel.hpp"
#include "ldrop/core/rng.hpp"
#include "ldrop/coulomb/ewald.hpp"
#include "ldrop/coulomb/pair.hpp"
#include "ldrop/coulomb/zeta.hpp"
#include "ldrop/droplet/constants.hpp"
#include "ldrop/droplet/energy.hpp"
#include "ldrop/expansion/fit.hpp"
#include "ldrop/expansion/localization.hpp"
#include "ldrop/expansion/trial.hpp"
#include "ldrop/expansion/upper_bound.hpp"
#include "ldrop/geom/lattice.hpp"
#include "ldrop/jellium/extrapolate.hpp"
#include "ldrop/jellium/finite.hpp"
#include "ldrop/jellium/optimize.hpp"
#include "ldrop/jellium/periodic.hpp"
#include "ldrop/thermo/quadrupole_layer.hpp"
#include "ldrop/thermo/swiss_cheese.hpp"

using namespace ldrop;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt <= budget_s;
  const bool ok = o.pass && in_time;
  failures += !ok;
  std::printf("%s  %d  %-28s %8.2fs (budget %gs)  %s%s\n", ok ? "PASS" : "FAIL", id, name, dt, budget_s,
              o.detail.c_str(), in_time ? "" : "  [over time budget]");
  std::fflush(stdout);
}

// criterion 1
Outcome zeta_regression() {
  const double bcc = epstein_zeta(make_lattice(LatticeKind::BCC, 1.0), 1.0).value;
  bool ok = std::abs(bcc - -1.4442) <= 5e-4;
  double worst_fe = 0.0;
  for (auto k : {LatticeKind::SC, LatticeKind::BCC, LatticeKind::FCC}) {
    const Lattice L = make_lattice(k, 1.0), D = dual_lattice(L);
    for (double s : {0.5, 1.0, 2.5}) worst_fe = std::max(worst_fe, std::abs(completed_zeta(L, s) - completed_zeta(D, 3.0 - s)));
  }
  ok = ok && worst_fe <= 1e-10;
  // direct sum at s = 5 with the continuum tail; the reported error bounds the truncation
  double worst_bf = 0.0;
  bool bf_ok = true;
  for (auto k : {LatticeKind::SC, LatticeKind::BCC, LatticeKind::FCC}) {
    const Lattice L = make_lattice(k, 1.0);
    const double R = 40.0;
    double s = 0.0;
    for (const Vec3& v : lattice_vectors_within(L, R)) s += std::pow(v.norm(), -5.0);
    s = 0.5 * s + kPi / (R * R);
    const ZetaValue z = epstein_zeta(L, 5.0);
    // the direct sum carries a lattice-point remainder of order R^{-3}
    const double allowed = z.error + 2.0 / (R * R * R);
    worst_bf = std::max(worst_bf, std::abs(z.value - s));
    bf_ok = bf_ok && std::abs(z.value - s) <= allowed;
  }
  ok = ok && bf_ok;
  return {ok, fmt("zeta_BCC(1)=%.12f  max FE residual=%.2e  max |zeta(5)-direct|=%.2e", bcc, worst_fe, worst_bf)};
}

// criterion 2
Outcome ball_constants() {
  const DropletConstants c = ball_optimum();
  const double R = std::cbrt(15.0 / (8.0 * kPi)), mu = 9.0 * std::cbrt(kPi / 15.0);
  const double eR = std::abs(c.R_star - R), emu = std::abs(c.mu_star - mu), em = std::abs(c.m_star - 2.5);
  return {eR <= 1e-10 && emu <= 1e-10 && em <= 1e-10,
          fmt("R*=%.12f mu*=%.12f m*=%.12f  max err=%.1e", c.R_star, c.mu_star, c.m_star, std::max({eR, emu, em}))};
}

// criterion 3
Outcome jellium_crystal() {
  const double zeta = epstein_zeta(make_lattice(LatticeKind::BCC, 1.0), 1.0).value;
  const double side = std::cbrt(16.0);
  const auto cfg = cubic_crystal(LatticeKind::BCC, 2, side);
  const double e = periodic_energy(cfg, PeriodicKernel(side), true).per_particle;
  return {std::abs(e - zeta) <= 1e-6 && std::abs(e - -1.4442) <= 5e-4,
          fmt("per-particle=%.12f  |e-zeta|=%.1e", e, std::abs(e - zeta))};
}

// criterion 4
Outcome jellium_bracket() {
  BasinHopParams p;
  p.restarts = 50;
  p.seed = 2024;
  p.crystal_seed = false;
  const auto r = basin_hop_periodic(16, 1.0, p);
  const double lo = kJelliumLowerBound - 1e-3, hi = -1.4430;
  return {r.best_per_particle >= lo && r.best_per_particle <= hi,
          fmt("best per-particle=%.8f (restart %d) in [%.4f, %.4f]", r.best_per_particle, r.best_restart, lo, hi)};
}

// criterion 5
Outcome expansion_pipeline() {
  BasinHopParams p;
  p.restarts = 8;
  p.seed = 1;
  p.crystal_seed = true;
  const UnitCellJellium cell = optimize_unit_cell(54, p);
  const std::vector<double> rho{1e-3, 3e-4, 1e-4, 3e-5};
  const DropletConstants dc = ball_optimum();
  const double target = std::cbrt(dc.m_star * dc.m_star) * kJelliumBccValue;
  std::string detail = fmt("N=54 e/N=%.6f", cell.search.best_per_particle);
  bool ok = false;
  for (auto conv : {MadelungConvention::PerParticle, MadelungConvention::Single}) {
    std::vector<double> e;
    for (double r : rho) e.push_back(upper_bound_e(r, cell, conv).e_ub);
    const CoefficientFit f = extract_coefficients(rho, e, true);
    const double r1 = f.c1 / dc.mu_star - 1.0, r2 = f.c2 / target - 1.0;
    const bool pass = std::abs(r1) <= 5e-3 && std::abs(r2) <= 0.10;
    detail += fmt("  [%s] c1=%.6f (%+.2e) c2=%.5f (%+.2f%%)%s", to_string(conv), f.c1, r1, f.c2, 100 * r2,
                  pass ? "" : " out of band");
    // the per-particle convention carries the criterion; the literal single-image form is reported
    if (conv == MadelungConvention::PerParticle) ok = pass;
  }
  return {ok, detail + fmt("  target c2=%.4f", target)};
}

// criterion 6
Outcome localization() {
  const Tetrahedron delta = regular_tetrahedron(1.0);
  const auto per = localized_perimeter_check(make_ball_union({Ball{1.0, Vec3::Zero()}}), delta, 4.0, 1000000, 7);
  const bool per_ok = std::abs(per.rhs - per.lhs) <= 3 * per.sigma && per.sigma < 0.01 * per.lhs;
  Rng rng(99);
  const double box = 6.0, half = 3.0;
  int violations = 0;
  double worst = 1e300;
  for (int i = 0; i < 20; ++i) {
    std::vector<Ball> bs;
    while (bs.size() < 5) {
      const double r = rng.uniform(0.1, 0.15) * box;
      const Vec3 x(rng.uniform(-half + r, half - r), rng.uniform(-half + r, half - r), rng.uniform(-half + r, half - r));
      bool ok = true;
      for (const auto& b : bs) ok = ok && (b.center - x).norm() > b.radius + r;
      if (ok) bs.push_back(Ball{r, x});
    }
    const auto c = localized_coulomb_check(make_ball_union(bs), Cube{box, Vec3::Zero()}, 0.05, delta, box / 3.0,
                                           200000, stream_seed(11, i));
    violations += !c.holds;
    worst = std::min(worst, c.sigma > 0 ? c.margin / c.sigma : c.margin);
  }
  return {per_ok && violations == 0,
          fmt("perimeter lhs=%.5f rhs=%.5f sigma=%.2e (z=%+.2f)  coulomb violations=%d/20 min margin=%.1f sigma", per.lhs,
              per.rhs, per.sigma, per.z_score(), violations, worst)};
}

// criterion 7
Outcome quadrupole() {
  bool ok = true;
  std::string detail;
  double Cmax = 0.0, emin = 1e300, emax = -1e300;
  std::size_t fitted = 0;
  const double eps = 0.25;
  for (double rho : {0.1, 0.3, 0.5}) {
    QuadrupoleLayerParams p;
    p.eps = eps;
    p.K = 8;
    p.rho = rho;
    const QuadrupoleLayer L = quadrupole_layer(Ball{2.0, Vec3::Zero()}, p);
    // charge: the solid is built from the measured volume, so the charge is zero up to rounding
    ok = ok && L.max_charge <= 1e-12 * std::pow(eps, 3);
    ok = ok && L.max_dipole <= 1e-12 * std::pow(eps, 4);
    Cmax = std::max(Cmax, L.max_perimeter_constant);
    std::vector<const QuadrupolePiece*> merged;
    for (const auto& pc : L.pieces)
      if (pc.kind == PieceKind::LargeMerged) merged.push_back(&pc);
    std::vector<double> ex(merged.size());
    parallel_for(merged.size(), [&](std::size_t i) { ex[i] = piece_decay_exponent(*merged[i], rho, eps); });
    for (double e : ex) {
      emin = std::min(emin, e);
      emax = std::max(emax, e);
    }
    fitted += ex.size();
    detail += fmt("  rho=%.1f: pieces=%zu q<=%.0e |d|<=%.0e", rho, L.pieces.size(), L.max_charge, L.max_dipole);
  }
  ok = ok && fitted > 0 && emin >= 2.7 && emax <= 3.3;
  return {ok, fmt("C=%.3f decay exponent in [%.3f, %.3f] over %zu pieces", Cmax, emin, emax, fitted) + detail};
}

// criterion 8
Outcome cheese() {
  const SwissCheeseSchedule s = swiss_cheese(12);
  const bool exact = s.p == 26 && s.rows[0].R == "1/2" && s.rows[1].n == "729";
  return {exact && s.bound_constant <= 50.0,
          fmt("R_0=%s n_1=%s C=%.3f (K=2..12)", s.rows[0].R.c_str(), s.rows[1].n.c_str(), s.bound_constant)};
}

// criterion 9
int run_cli(const std::string& args) {
  const std::string cmd = std::string(LDROP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome properties() {
  // periodic jellium gradient
  Rng rng(31);
  double worst_grad = 0.0;
  {
    const auto cfg = random_periodic_configuration(12, 2.3, rng);
    PeriodicJellium ev(2.3, 12);
    std::vector<Vec3> g;
    ev.pair_energy(cfg.x, &g);
    for (std::size_t j = 0; j < cfg.size(); ++j)
      for (int a = 0; a < 3; ++a) {
        auto xp = cfg.x, xm = cfg.x;
        const double h = 1e-5;
        xp[j][a] += h;
        xm[j][a] -= h;
        const double fd = (ev.pair_energy(xp) - ev.pair_energy(xm)) / (2 * h);
        worst_grad = std::max(worst_grad, std::abs(g[j][a] - fd) / std::max(1.0, std::abs(fd)));
      }
  }
  // finite jellium gradient in a tetrahedron
  {
    FiniteJellium ev(scaled_translate(regular_tetrahedron(1.0), 2.0), 1.0, 1.0);
    std::vector<Vec3> x;
    for (int i = 0; i < 5; ++i) x.push_back(random_point_in(ev.domain(), rng));
    std::vector<Vec3> g;
    ev.energy(x, &g);
    for (std::size_t j = 0; j < x.size(); ++j)
      for (int a = 0; a < 3; ++a) {
        auto xp = x, xm = x;
        const double h = 1e-5;
        xp[j][a] += h;
        xm[j][a] -= h;
        const double fd = (ev.energy(xp) - ev.energy(xm)) / (2 * h);
        worst_grad = std::max(worst_grad, std::abs(g[j][a] - fd) / std::max(1.0, std::abs(fd)));
      }
  }
  // scaling identities
  double worst_scale = 0.0;
  {
    const Domain t = regular_tetrahedron(1.0), c = Cube{1.0, Vec3(1.5, 0.2, 0.0)};
    const double d1 = domain_pair_coulomb(t, c), d2 = domain_pair_coulomb(scaled_translate(t, 1.9), scaled_translate(c, 1.9));
    worst_scale = std::max(worst_scale, std::abs(d2 / (std::pow(1.9, 5) * d1) - 1.0));
    const double z1 = epstein_zeta(make_lattice(LatticeKind::FCC, 1.0), 1.0).value;
    const double z8 = epstein_zeta(make_lattice(LatticeKind::FCC, 8.0), 1.0).value;
    worst_scale = std::max(worst_scale, std::abs(z8 / (2.0 * z1) - 1.0));
    const auto cfg = cubic_crystal(LatticeKind::BCC, 2, 1.0);
    auto big = cfg;
    for (auto& v : big.x) v *= 3.0;
    const double e1 = periodic_energy(cfg, PeriodicKernel(1.0), true).total;
    const double e3 = periodic_energy(big, PeriodicKernel(3.0), true).total;
    worst_scale = std::max(worst_scale, std::abs(3.0 * e3 / e1 - 1.0));
  }
  // determinism across thread counts, two runs each
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("ldrop_acc_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string base = "jellium-opt --N 16 --restarts 4 --hops 4 --seed 8";
  bool same = true;
  std::string ref_csv, ref_json;
  for (int rep = 0; rep < 2; ++rep)
    for (int t : {1, 8}) {
      const fs::path out = dir / ("r" + std::to_string(rep) + "_" + std::to_string(t));
      if (run_cli(base + " --threads " + std::to_string(t) + " --out " + out.string()) != 0) same = false;
      const std::string csv = slurp(out.string() + ".csv"), js = slurp(out.string() + ".json");
      if (ref_csv.empty()) {
        ref_csv = csv;
        ref_json = js;
      }
      same = same && !csv.empty() && csv == ref_csv && js == ref_json;
    }
  fs::remove_all(dir);
  return {worst_grad <= 1e-6 && worst_scale <= 1e-9 && same,
          fmt("max grad rel err=%.1e  max scaling err=%.1e  threads 1/8 byte-identical=%s", worst_grad, worst_scale,
              same ? "yes" : "no")};
}

}  // namespace

int main() {
  if (const char* t = std::getenv("LDROP_THREADS")) set_thread_count(unsigned(std::atoi(t)));
  else set_thread_count(std::thread::hardware_concurrency());
  criterion(1, "zeta regression", 5, zeta_regression);
  criterion(2, "ball constants", 1, ball_constants);
  criterion(3, "jellium crystal", 10, jellium_crystal);
  criterion(4, "jellium optimization bracket", 600, jellium_bracket);
  criterion(5, "expansion pipeline", 1800, expansion_pipeline);
  criterion(6, "localization identities", 300, localization);
  criterion(7, "quadrupole layer", 60, quadrupole);
  criterion(8, "swiss cheese", 1, cheese);
  criterion(9, "property suites", 600, properties);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
