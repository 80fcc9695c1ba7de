#pragma once

#include <string>

#include "json.hpp"
#include "ldrop/expansion/trial.hpp"

namespace ldrop {

// Image self-energy in the trial bound: N M / (2 l) (one per particle, default)
// or M / (2 l) as literally displayed.
enum class MadelungConvention { PerParticle, Single };

const char* to_string(MadelungConvention c);
MadelungConvention parse_madelung_convention(const std::string& s);

struct ExpansionReport {
  double rho = 0.0;
  std::size_t n = 0;
  double side = 0.0;               // l = (m_* N / rho)^{1/3}
  double pair = 0.0;               // sum_{j<k} G_l(x_j - x_k)
  double madelung_self = 0.0;
  double jellium_contribution = 0.0;  // (m_*^2 / l^3) (pair + self)
  double mu_rho = 0.0;
  double error_term = 0.0;         // 2 pi r_*^2 rho^2
  double e_ub = 0.0;
  double residual_coefficient = 0.0;  // (e_ub - mu_* rho) / rho^{4/3}
  MadelungConvention convention = MadelungConvention::PerParticle;
};

ExpansionReport upper_bound_e(double rho, const UnitCellJellium& cell,
                              MadelungConvention conv = MadelungConvention::PerParticle);

nlohmann::json to_json(const ExpansionReport& r);

}  // namespace ldrop
