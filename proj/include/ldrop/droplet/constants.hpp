#pragma once

#include "json.hpp"

namespace ldrop {

// Ball-restricted single-droplet problem: minimize I[B_R] = (Per + 1/2 iint) / |B_R|.
struct DropletConstants {
  double R_star = 0.0;
  double mu_star = 0.0;
  double m_star = 0.0;
  double m_star_star = 0.0;  // equal to m_star when only balls compete
  // what is known for the unrestricted problem, carried as metadata only
  double m_star_rigorous_upper = 8.0;
  double m_star_star_rigorous_lower = 2.5;
  bool minimizer_is_ball_conjectured = true;
};

// I[B_R] = 3/R + (4 pi / 5) R^2
double ball_energy_per_volume(double R);
double ball_energy_per_volume_derivative(double R);
double ball_energy_per_volume_second_derivative(double R);

// Root of dI/dR by bracketing (TOMS 748), then mu = I(R_*) and m = |B_{R_*}|.
DropletConstants ball_optimum();

nlohmann::json to_json(const DropletConstants& c);

}  // namespace ldrop
