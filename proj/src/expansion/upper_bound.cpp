#include "ldrop/expansion/upper_bound.hpp"

#include <cmath>

#include "ldrop/coulomb/ewald.hpp"
#include "ldrop/droplet/constants.hpp"

namespace ldrop {

const char* to_string(MadelungConvention c) {
  return c == MadelungConvention::PerParticle ? "per-particle" : "single";
}

MadelungConvention parse_madelung_convention(const std::string& s) {
  if (s == "per-particle" || s == "N") return MadelungConvention::PerParticle;
  if (s == "single" || s == "1") return MadelungConvention::Single;
  throw ArgumentError("unknown Madelung convention '" + s + "' (per-particle or single)");
}

ExpansionReport upper_bound_e(double rho, const UnitCellJellium& cell, MadelungConvention conv) {
  if (!(rho > 0 && rho <= 1e-2)) throw ArgumentError("upper bound: rho must lie in (0, 1e-2]");
  if (cell.n < 2) throw ArgumentError("upper bound: N must be at least 2");
  const DropletConstants dc = ball_optimum();
  ExpansionReport r;
  r.rho = rho;
  r.n = cell.n;
  r.convention = conv;
  r.side = std::cbrt(dc.m_star * double(cell.n) / rho);
  const double lam = r.side / std::cbrt(double(cell.n));
  r.pair = cell.pair_unit / lam;
  const double per = conv == MadelungConvention::PerParticle ? double(cell.n) : 1.0;
  r.madelung_self = per * madelung_z3() / (2.0 * r.side);
  r.jellium_contribution = dc.m_star * dc.m_star / (r.side * r.side * r.side) * (r.pair + r.madelung_self);
  r.mu_rho = dc.mu_star * rho;
  r.error_term = 2.0 * kPi * dc.R_star * dc.R_star * rho * rho;
  r.e_ub = r.mu_rho + r.jellium_contribution + r.error_term;
  r.residual_coefficient = (r.e_ub - r.mu_rho) / std::pow(rho, 4.0 / 3.0);
  return r;
}

nlohmann::json to_json(const ExpansionReport& r) {
  return {{"rho", r.rho},
          {"N", r.n},
          {"side", r.side},
          {"pair", r.pair},
          {"madelung_self", r.madelung_self},
          {"jellium_contribution", r.jellium_contribution},
          {"mu_rho", r.mu_rho},
          {"error_term", r.error_term},
          {"e_ub", r.e_ub},
          {"residual_coefficient", r.residual_coefficient},
          {"madelung_convention", to_string(r.convention)}};
}

}  // namespace ldrop
