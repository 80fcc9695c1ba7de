// Command-line front end: one subcommand per computation, CSV + JSON + plot files.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <thread>

#include "ldrop/thermo/quadrupole_layer.hpp"
#include "ldrop/thermo/swiss_cheese.hpp"
#include "ldrop/core/parallel.hpp"
#include "ldrop/coulomb/ewald.hpp"
#include "ldrop/coulomb/zeta.hpp"
#include "ldrop/droplet/constants.hpp"
#include "ldrop/droplet/energy.hpp"
#include "ldrop/droplet/grand_canonical.hpp"
#include "ldrop/expansion/fit.hpp"
#include "ldrop/expansion/localization.hpp"
#include "ldrop/expansion/upper_bound.hpp"
#include "ldrop/geom/serialize.hpp"
#include "ldrop/jellium/extrapolate.hpp"
#include "ldrop/jellium/grand_canonical.hpp"
#include "ldrop/jellium/optimize.hpp"
#include "ldrop/jellium/periodic.hpp"
#include "ldrop/simd/kernels.hpp"
#include "output.hpp"

using namespace ldrop;
using cli::num;
using cli::Output;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  double tol = 1e-10;
  std::string config, out;
};

Domain shape_of_volume(const std::string& shape, double volume) {
  if (shape == "tetra") return scaled_translate(regular_tetrahedron(1.0), std::cbrt(volume));
  if (shape == "cube") return Cube{std::cbrt(volume), Vec3::Zero()};
  if (shape == "ball") return Ball{std::cbrt(3.0 * volume / (4.0 * kPi)), Vec3::Zero()};
  throw ArgumentError("unknown shape '" + shape + "' (tetra, cube or ball)");
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

// ---- zeta -----------------------------------------------------------------
struct ZetaArgs {
  std::string lattice = "bcc";
  double density = 1.0;
  std::vector<double> s{1.0};
};

Output run_zeta(const ZetaArgs& a, const Common&) {
  const Lattice L = make_lattice(parse_lattice_kind(a.lattice), a.density);
  const Lattice D = dual_lattice(L);
  Output o;
  o.header = {"lattice", "density", "s", "zeta", "truncation_error", "functional_equation_residual"};
  Output::Plot plot{"zeta", "s", "zeta", {}};
  json vals = json::array();
  for (double s : a.s) {
    const ZetaValue z = epstein_zeta(L, s);
    const double fe = std::abs(completed_zeta(L, s) - completed_zeta(D, 3.0 - s));
    o.rows.push_back({to_string(L.kind), num(a.density), num(s), num(z.value), num(z.error), num(fe)});
    plot.points.push_back({s, z.value});
    vals.push_back({{"s", s}, {"zeta", z.value}, {"error", z.error}, {"functional_equation_residual", fe}});
  }
  o.summary = {{"lattice", to_string(L.kind)}, {"density", a.density}, {"values", vals}};
  o.plots.push_back(plot);
  return o;
}

// ---- madelung -------------------------------------------------------------
struct MadelungArgs {
  std::vector<std::string> lattices{"sc", "bcc", "fcc"};
  int k = 2;
};

Output run_madelung(const MadelungArgs& a, const Common& c) {
  Output o;
  o.header = {"lattice", "k", "N", "per_particle_periodic", "zeta_1", "difference"};
  json rows = json::array();
  for (const auto& name : a.lattices) {
    const LatticeKind kind = parse_lattice_kind(name);
    const Lattice L = make_lattice(kind, 1.0);
    PointConfiguration cfg = cubic_crystal(kind, a.k, 1.0);
    const double side = std::cbrt(double(cfg.size()));
    for (auto& x : cfg.x) x *= side;
    const PeriodicKernel kernel(side, 0.0, std::min(c.tol, 1e-8));
    const JelliumEnergyReport r = periodic_energy(cfg, kernel, true);
    const double z = epstein_zeta(L, 1.0).value;
    o.rows.push_back({name, std::to_string(a.k), std::to_string(cfg.size()), num(r.per_particle), num(z),
                      num(r.per_particle - z)});
    rows.push_back({{"lattice", name}, {"N", cfg.size()}, {"per_particle", r.per_particle}, {"zeta_1", z}});
  }
  o.summary = {{"madelung_z3", madelung_z3()}, {"crystals", rows}};
  return o;
}

// ---- jellium-opt ----------------------------------------------------------
struct JelliumOptArgs {
  std::size_t n = 16;
  double density = 1.0;
  int restarts = 50;
  int hops = 8;
  bool crystal_seed = false;
};

Output run_jellium_opt(const JelliumOptArgs& a, const Common& c) {
  BasinHopParams p;
  p.restarts = a.restarts;
  p.hops = a.hops;
  p.seed = c.seed;
  p.crystal_seed = a.crystal_seed;
  p.local.lbfgs.gradient_tol = std::max(c.tol, 1e-12);
  const BasinHopResult r = basin_hop_periodic(a.n, a.density, p);
  Output o;
  o.header = {"restart", "seed", "pair_energy", "per_particle"};
  Output::Plot plot{"restarts", "restart", "per_particle", {}};
  for (const auto& rec : r.restarts) {
    o.rows.push_back({std::to_string(rec.index), std::to_string(rec.seed), num(rec.energy), num(rec.per_particle)});
    plot.points.push_back({double(rec.index), rec.per_particle});
  }
  const bool in_bracket = r.best_per_particle >= kJelliumLowerBound - 1e-3 && r.best_per_particle <= -1.4430;
  o.summary = {{"N", a.n},
               {"density", a.density},
               {"best_per_particle", r.best_per_particle},
               {"best_pair_energy", r.best_energy},
               {"best_restart", r.best_restart},
               {"within_bracket", in_bracket},
               {"bracket", {kJelliumLowerBound - 1e-3, -1.4430}},
               {"configuration", to_json(r.best)}};
  o.plots.push_back(plot);
  return o;
}

// ---- jellium-gc -----------------------------------------------------------
struct JelliumGcArgs {
  double A = 2.0;
  double charge = 2.5;
  int starts = 6;
};

Output run_jellium_gc(const JelliumGcArgs& a, const Common& c) {
  GcPointJelliumParams p;
  p.starts = a.starts;
  p.seed = c.seed;
  p.tol = c.tol;
  const Domain delta = regular_tetrahedron(1.0);
  const GcPointJelliumResult r = grand_canonical_point_jellium(a.A, delta, a.charge, p);
  Output o;
  o.header = {"n", "value", "averaged"};
  Output::Plot plot{"counts", "n", "value", {}};
  for (const auto& row : r.rows) {
    o.rows.push_back({std::to_string(row.n), num(row.value), num(row.average)});
    plot.points.push_back({double(row.n), row.value});
  }
  o.summary = {{"A", a.A},
               {"charge", a.charge},
               {"best_n", r.best_n},
               {"value", r.value},
               {"value_over_A3", r.value / (a.A * a.A * a.A)},
               {"interpolated_bound", r.interpolated_bound},
               {"background_self", r.background_self},
               {"configuration", to_json(r.best)}};
  o.plots.push_back(plot);
  return o;
}

// ---- droplet --------------------------------------------------------------
struct DropletArgs {
  std::string omega_file, lambda_file;
  double side = 4.0;
  double rho = 0.1;
  double radius = 0.0;  // 0: R_*
};

Output run_droplet(const DropletArgs& a, const Common& c) {
  const DropletConstants dc = ball_optimum();
  const Domain lambda = a.lambda_file.empty() ? Domain(Cube{a.side, Vec3::Zero()})
                                              : domain_from_json(read_json_file(a.lambda_file));
  const BallUnion omega = a.omega_file.empty()
                              ? make_ball_union({Ball{a.radius > 0 ? a.radius : dc.R_star, Vec3::Zero()}})
                              : ball_union_from_json(read_json_file(a.omega_file));
  const LiquidDropBreakdown b = liquid_drop_energy(omega, lambda, a.rho, c.tol);
  const MassBoundReport m = mass_bound_check(omega, lambda, a.rho);
  Output o;
  o.header = {"quantity", "value"};
  auto add = [&](const std::string& k, double v) { o.rows.push_back({k, num(v)}); };
  add("R_star", dc.R_star);
  add("mu_star", dc.mu_star);
  add("m_star", dc.m_star);
  add("perimeter", b.perimeter);
  add("droplet_droplet", b.droplet_droplet);
  add("droplet_background", b.droplet_background);
  add("background_background", b.background_background);
  add("total", b.total);
  add("volume", b.volume);
  add("neutrality_defect", b.neutrality_defect);
  Output::Plot plot{"ball_energy", "R", "energy_per_volume", {}};
  for (int i = 1; i <= 200; ++i) {
    const double R = 0.02 * i;
    plot.points.push_back({R, ball_energy_per_volume(R)});
  }
  o.plots.push_back(plot);
  o.summary = {{"constants", to_json(dc)}, {"breakdown", to_json(b)}, {"mass_bound", to_json(m)}, {"rho", a.rho}};
  return o;
}

// ---- fgc ------------------------------------------------------------------
struct FgcArgs {
  std::string shape = "tetra";
  double A = 3.0;
  std::vector<double> rho{1e-2, 1e-3, 1e-4};
  int starts = 4;
  int k_min = -1, k_max = -1;
};

Output run_fgc(const FgcArgs& a, const Common& c) {
  FgcParams p;
  p.seed = c.seed;
  p.tol = c.tol;
  p.starts = a.starts;
  p.k_min = a.k_min;
  p.k_max = a.k_max;
  Output o;
  o.header = {"shape", "A", "rho", "side", "F", "k", "F_over_rho13", "F_over_rho13_A3"};
  Output::Plot plot{"scaled", "rho", "F_over_rho13_A3", {}};
  json rows = json::array();
  for (double rho : a.rho) {
    if (!(rho > 0 && rho <= 0.5)) throw ArgumentError("fgc: rho must lie in (0, 1/2]");
    const double volume = a.A * a.A * a.A / rho;
    const Domain lambda = shape_of_volume(a.shape, volume);
    const FgcResult r = grand_canonical_F(lambda, rho, p);
    const double s = r.value / std::cbrt(rho);
    const double side = std::cbrt(volume);
    o.rows.push_back({a.shape, num(a.A), num(rho), num(side), num(r.value), std::to_string(r.k), num(s),
                      num(s / (a.A * a.A * a.A))});
    plot.points.push_back({rho, s / (a.A * a.A * a.A)});
    json row = to_json(r);
    row["rho"] = rho;
    rows.push_back(row);
  }
  o.summary = {{"shape", a.shape}, {"A", a.A}, {"results", rows},
               {"note", "F_over_rho13_A3 omits the unquantified -C/A correction"}};
  o.plots.push_back(plot);
  return o;
}

// ---- expansion ------------------------------------------------------------
struct ExpansionArgs {
  std::size_t n = 54;
  std::vector<double> rho{1e-3, 3e-4, 1e-4, 3e-5};
  int restarts = 8;
  int hops = 8;
  bool crystal_seed = true;
  std::string madelung = "both";
  bool quadratic = true;
};

Output run_expansion(const ExpansionArgs& a, const Common& c) {
  BasinHopParams p;
  p.restarts = a.restarts;
  p.hops = a.hops;
  p.seed = c.seed;
  p.crystal_seed = a.crystal_seed;
  const UnitCellJellium cell = optimize_unit_cell(a.n, p);
  std::vector<MadelungConvention> convs;
  if (a.madelung == "both")
    convs = {MadelungConvention::PerParticle, MadelungConvention::Single};
  else
    convs = {parse_madelung_convention(a.madelung)};
  const DropletConstants dc = ball_optimum();
  const double target = std::cbrt(dc.m_star * dc.m_star) * kJelliumBccValue;

  Output o;
  o.header = {"convention", "rho", "N", "side", "pair", "madelung_self", "e_ub", "mu_rho", "residual_coefficient"};
  json fits = json::object();
  for (auto conv : convs) {
    std::vector<double> es;
    Output::Plot pe{std::string("e_ub_") + to_string(conv), "rho", "e_ub", {}};
    Output::Plot pr{std::string("residual_") + to_string(conv), "rho^(1/3)", "residual_coefficient", {}};
    for (double rho : a.rho) {
      const ExpansionReport r = upper_bound_e(rho, cell, conv);
      es.push_back(r.e_ub);
      o.rows.push_back({to_string(conv), num(rho), std::to_string(a.n), num(r.side), num(r.pair),
                        num(r.madelung_self), num(r.e_ub), num(r.mu_rho), num(r.residual_coefficient)});
      pe.points.push_back({rho, r.e_ub});
      pr.points.push_back({std::cbrt(rho), r.residual_coefficient});
    }
    const CoefficientFit f = extract_coefficients(a.rho, es, a.quadratic);
    fits[to_string(conv)] = {{"c1", f.c1},
                             {"c2", f.c2},
                             {"c3", f.c3},
                             {"residual", f.residual},
                             {"condition", f.condition},
                             {"decades", f.decades},
                             {"warning", f.warning},
                             {"c1_relative_error", f.c1 / dc.mu_star - 1.0},
                             {"c2_relative_error", f.c2 / target - 1.0}};
    o.plots.push_back(pe);
    o.plots.push_back(pr);
  }
  o.summary = {{"N", a.n},
               {"unit_cell_per_particle", cell.search.best_per_particle},
               {"unit_cell_pair", cell.pair_unit},
               {"mu_star", dc.mu_star},
               {"c2_target", target},
               {"fits", fits}};
  return o;
}

// ---- localize-check -------------------------------------------------------------
struct LocalizeArgs {
  double ell = 4.0;
  double radius = 1.0;
  std::size_t samples = 1000000;
  int configs = 20;
  std::size_t coulomb_samples = 200000;
  double rho = 0.05;
  double box = 6.0;
  int balls = 5;
};

Output run_localize(const LocalizeArgs& a, const Common& c) {
  const Tetrahedron delta = regular_tetrahedron(1.0);
  Output o;
  o.header = {"check", "index", "lhs", "rhs", "sigma", "pass"};
  const BallUnion ball = make_ball_union({Ball{a.radius, Vec3::Zero()}});
  const PerimeterIdentityReport per = localized_perimeter_check(ball, delta, a.ell, a.samples, c.seed);
  const bool per_ok = std::abs(per.rhs - per.lhs) <= 3 * per.sigma && per.sigma < 0.01 * per.lhs;
  o.rows.push_back({"perimeter", "0", num(per.lhs), num(per.rhs), num(per.sigma), per_ok ? "1" : "0"});

  Rng rng(stream_seed(c.seed, 1u << 20));
  const double half = 0.5 * a.box;
  int violations = 0;
  json configs = json::array();
  for (int i = 0; i < a.configs; ++i) {
    std::vector<Ball> bs;
    int tries = 0;
    while (int(bs.size()) < a.balls) {
      if (++tries > 100000) throw NumericError("localize-check: cannot place disjoint balls; enlarge the box");
      const double r = rng.uniform(0.1, 0.15) * a.box;
      const Vec3 x(rng.uniform(-half + r, half - r), rng.uniform(-half + r, half - r), rng.uniform(-half + r, half - r));
      bool ok = true;
      for (const auto& b : bs) ok = ok && (b.center - x).norm() > b.radius + r;
      if (ok) bs.push_back(Ball{r, x});
    }
    const BallUnion om = make_ball_union(bs);
    const CoulombInequalityReport r = localized_coulomb_check(
        om, Cube{a.box, Vec3::Zero()}, a.rho, delta, a.box / 3.0, a.coulomb_samples, stream_seed(c.seed, i));
    violations += !r.holds;
    o.rows.push_back({"coulomb", std::to_string(i), num(r.lhs), num(r.rhs), num(r.sigma), r.holds ? "1" : "0"});
    json j = to_json(r);
    j["omega"] = to_json(om);
    configs.push_back(j);
  }
  o.summary = {{"perimeter", to_json(per)},
               {"perimeter_pass", per_ok},
               {"coulomb", configs},
               {"coulomb_violations", violations},
               {"ell_coulomb", a.box / 3.0}};
  return o;
}

// ---- cheese ---------------------------------------------------------------
struct CheeseArgs {
  int K = 12;
};

Output run_cheese(const CheeseArgs& a, const Common&) {
  const SwissCheeseSchedule s = swiss_cheese(a.K);
  Output o;
  o.header = {"j", "R", "n", "leftover_ratio", "perimeter_ratio", "boundary_ratio"};
  Output::Plot plot{"ratios", "j", "leftover_ratio", {}};
  for (const auto& r : s.rows) {
    o.rows.push_back({std::to_string(r.j), r.R, r.n, num(r.leftover_ratio), num(r.perimeter_ratio),
                      num(r.boundary_ratio)});
    plot.points.push_back({double(r.j), r.leftover_ratio});
  }
  o.summary = to_json(s);
  o.plots.push_back(plot);
  return o;
}

// ---- quadlayer ------------------------------------------------------------
struct QuadArgs {
  std::string shape = "ball";
  double size = 2.0;  // ball radius or cube side
  double eps = 0.25;
  int K = 8;
  double rho = 0.3;
  int subdivision = 2;
  double window = 1.0;
  double r_lo = 16.0, r_hi = 128.0;
  bool pieces = false;
};

Output run_quadlayer(const QuadArgs& a, const Common&) {
  Domain lambda;
  if (a.shape == "ball")
    lambda = Ball{a.size, Vec3::Zero()};
  else if (a.shape == "cube")
    lambda = Cube{a.size, Vec3::Zero()};
  else
    throw ArgumentError("quadlayer: shape must be ball or cube");
  QuadrupoleLayerParams p;
  p.eps = a.eps;
  p.K = a.K;
  p.rho = a.rho;
  p.subdivision = a.subdivision;
  p.association_window = a.window;
  QuadrupoleLayer L = quadrupole_layer(lambda, p);
  std::vector<std::size_t> merged;
  for (std::size_t i = 0; i < L.pieces.size(); ++i)
    if (L.pieces[i].kind == PieceKind::LargeMerged) merged.push_back(i);
  std::vector<double> near(merged.size());
  parallel_for(merged.size(), [&](std::size_t m) {
    auto& q = L.pieces[merged[m]];
    q.diag.decay_exponent = piece_decay_exponent(q, a.rho, a.eps, a.r_lo, a.r_hi);
    near[m] = piece_decay_exponent(q, a.rho, a.eps, 4.0, 32.0);
  });
  Output o;
  o.header = {"piece", "kind", "volume", "charge", "dipole", "perimeter_constant", "shift", "decay_exponent",
              "decay_exponent_4_32"};
  double emin = 1e300, emax = -1e300, nmin = 1e300, nmax = -1e300;
  Output::Plot plot{"decay", "piece", "decay_exponent", {}};
  for (std::size_t m = 0; m < merged.size(); ++m) {
    const auto& q = L.pieces[merged[m]];
    const double e = q.diag.decay_exponent;
    emin = std::min(emin, e);
    emax = std::max(emax, e);
    nmin = std::min(nmin, near[m]);
    nmax = std::max(nmax, near[m]);
    o.rows.push_back({std::to_string(merged[m]), "3", num(q.volume), num(q.diag.charge), num(q.diag.dipole.norm()),
                      num(q.diag.perimeter_constant), num(q.diag.shift), num(e), num(near[m])});
    plot.points.push_back({double(m), e});
  }
  json s = summary_json(L);
  s["decay_window"] = {a.r_lo, a.r_hi};
  s["decay_exponent_range"] = {emin, emax};
  s["decay_exponent_range_4_32"] = {nmin, nmax};
  s["dipole_limit"] = 1e-12 * std::pow(a.eps, 4);
  if (a.pieces) {
    json all = json::array();
    for (const auto& q : L.pieces) all.push_back(to_json(q));
    s["piece_list"] = all;
  }
  o.summary = s;
  o.plots.push_back(plot);
  return o;
}

// Option echo for the provenance block; threads and output paths are left out so
// that outputs do not depend on them.
json echo_options(const CLI::App* sub) {
  json j = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "threads" || name == "out" || name == "config" || name == "simd") continue;
    std::string v;
    const auto& res = opt->results();
    if (!res.empty()) {
      for (std::size_t i = 0; i < res.size(); ++i) v += (i ? "," : "") + res[i];
    } else {
      v = opt->get_default_str();
    }
    j[name] = v;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liquid drop and jellium computations", "ldrop"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::string simd = "auto";
  app.add_option("--simd", simd, "Kernel backend: auto, scalar or avx2");
  app.set_version_flag("--version", LDROP_VERSION);

  Common common;
  std::string active;
  std::function<Output()> job;
  std::map<std::string, CLI::App*> subs;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--seed", common.seed, "Master RNG seed");
    s->add_option("--threads", common.threads, "Worker threads (0: all cores)");
    s->add_option("--tol", common.tol, "Numerical tolerance");
    s->add_option("--config", common.config, "key=value file; command-line flags win");
    s->add_option("--out", common.out, "Output prefix for .csv/.json/.dat (default: CSV to stdout)");
    subs[s->get_name()] = s;
  };

  ZetaArgs za;
  auto* s_zeta = app.add_subcommand("zeta", "Epstein zeta of SC/BCC/FCC");
  s_zeta->add_option("--lattice", za.lattice, "sc, bcc or fcc");
  s_zeta->add_option("--density", za.density);
  s_zeta->add_option("--s", za.s, "Exponents (comma separated)")->delimiter(',');
  add_common(s_zeta);
  s_zeta->callback([&] { job = [&] { return run_zeta(za, common); }; });

  MadelungArgs ma;
  auto* s_mad = app.add_subcommand("madelung", "Crystal energies against zeta(1)");
  s_mad->add_option("--lattices", ma.lattices)->delimiter(',');
  s_mad->add_option("--k", ma.k, "Conventional cells per edge");
  add_common(s_mad);
  s_mad->callback([&] { job = [&] { return run_madelung(ma, common); }; });

  JelliumOptArgs ja;
  auto* s_jo = app.add_subcommand("jellium-opt", "Basin-hopping search for periodic jellium");
  s_jo->add_option("--N", ja.n);
  s_jo->add_option("--density", ja.density);
  s_jo->add_option("--restarts", ja.restarts);
  s_jo->add_option("--hops", ja.hops);
  s_jo->add_option("--crystal-seed", ja.crystal_seed, "Start restart 0 from a cubic crystal");
  add_common(s_jo);
  s_jo->callback([&] { job = [&] { return run_jellium_opt(ja, common); }; });

  JelliumGcArgs ga;
  auto* s_jg = app.add_subcommand("jellium-gc", "Grand-canonical point jellium in a tetrahedron");
  s_jg->add_option("--A", ga.A);
  s_jg->add_option("--charge", ga.charge);
  s_jg->add_option("--starts", ga.starts);
  add_common(s_jg);
  s_jg->callback([&] { job = [&] { return run_jellium_gc(ga, common); }; });

  DropletArgs da;
  auto* s_dr = app.add_subcommand("droplet", "Ball constants and energy breakdowns");
  s_dr->add_option("--omega", da.omega_file, "Ball union JSON");
  s_dr->add_option("--lambda", da.lambda_file, "Container domain JSON");
  s_dr->add_option("--side", da.side, "Cube side when no container file is given");
  s_dr->add_option("--rho", da.rho);
  s_dr->add_option("--radius", da.radius, "Ball radius when no droplet file is given (0: R_*)");
  add_common(s_dr);
  s_dr->callback([&] { job = [&] { return run_droplet(da, common); }; });

  FgcArgs fa;
  auto* s_fgc = app.add_subcommand("fgc", "Grand-canonical droplet energy sweep");
  s_fgc->add_option("--shape", fa.shape, "tetra, cube or ball");
  s_fgc->add_option("--A", fa.A);
  s_fgc->add_option("--rho", fa.rho)->delimiter(',');
  s_fgc->add_option("--starts", fa.starts);
  s_fgc->add_option("--k-min", fa.k_min);
  s_fgc->add_option("--k-max", fa.k_max);
  add_common(s_fgc);
  s_fgc->callback([&] { job = [&] { return run_fgc(fa, common); }; });

  ExpansionArgs ea;
  auto* s_ex = app.add_subcommand("expansion", "Trial-state upper bound and coefficient fit");
  s_ex->add_option("--N", ea.n);
  s_ex->add_option("--rho", ea.rho)->delimiter(',');
  s_ex->add_option("--restarts", ea.restarts);
  s_ex->add_option("--hops", ea.hops);
  s_ex->add_option("--crystal-seed", ea.crystal_seed);
  s_ex->add_option("--madelung", ea.madelung, "per-particle, single or both");
  s_ex->add_option("--quadratic", ea.quadratic, "Include the rho^2 column in the fit");
  add_common(s_ex);
  s_ex->callback([&] { job = [&] { return run_expansion(ea, common); }; });

  LocalizeArgs loca;
  auto* s_loc = app.add_subcommand("localize-check", "Sampling checks of the tetrahedral localization");
  s_loc->add_option("--ell", loca.ell, "Simplex scale for the perimeter identity");
  s_loc->add_option("--radius", loca.radius);
  s_loc->add_option("--samples", loca.samples);
  s_loc->add_option("--configs", loca.configs);
  s_loc->add_option("--coulomb-samples", loca.coulomb_samples);
  s_loc->add_option("--rho", loca.rho);
  s_loc->add_option("--box", loca.box, "Cube side for the Coulomb check");
  s_loc->add_option("--balls", loca.balls);
  add_common(s_loc);
  s_loc->callback([&] { job = [&] { return run_localize(loca, common); }; });

  CheeseArgs ca;
  auto* s_ch = app.add_subcommand("cheese", "Swiss-cheese packing schedule");
  s_ch->add_option("--K", ca.K);
  add_common(s_ch);
  s_ch->callback([&] { job = [&] { return run_cheese(ca, common); }; });

  QuadArgs qa;
  auto* s_q = app.add_subcommand("quadlayer", "Neutral dipole-free boundary layer");
  s_q->add_option("--shape", qa.shape, "ball or cube");
  s_q->add_option("--size", qa.size, "Ball radius or cube side");
  s_q->add_option("--eps", qa.eps);
  s_q->add_option("--K", qa.K);
  s_q->add_option("--rho", qa.rho);
  s_q->add_option("--subdivision", qa.subdivision);
  s_q->add_option("--window", qa.window, "Association window in units of eps");
  s_q->add_option("--r-lo", qa.r_lo, "Decay fit start, units of eps");
  s_q->add_option("--r-hi", qa.r_hi, "Decay fit end, units of eps");
  s_q->add_option("--pieces", qa.pieces, "Write every piece to the JSON summary");
  add_common(s_q);
  s_q->callback([&] { job = [&] { return run_quadlayer(qa, common); }; });

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
      if (!path.empty()) {
        cli::merge_config_file(path, args);
        break;
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (simd == "scalar")
      simd::set_backend(simd::Backend::Scalar);
    else if (simd == "avx2")
      simd::set_backend(simd::Backend::Avx2);
    else if (simd != "auto")
      throw ArgumentError("--simd must be auto, scalar or avx2");
    set_thread_count(common.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : common.threads);
    const Output out = job();
    const CLI::App* sub = app.get_subcommands().front();
    const json provenance = {{"tool", "ldrop"},
                             {"version", LDROP_VERSION},
                             {"subcommand", sub->get_name()},
                             {"seed", common.seed},
                             {"tol", common.tol},
                             {"options", echo_options(sub)}};
    cli::emit(out, provenance, common.out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
