#include "ldrop/droplet/constants.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "ldrop/core/types.hpp"

namespace ldrop {

double ball_energy_per_volume(double R) {
  if (!(R > 0)) throw ArgumentError("ball radius must be positive");
  const double Q = 4.0 * kPi / 3.0 * R * R * R;
  return (4.0 * kPi * R * R + 0.6 * Q * Q / R) / Q;
}

double ball_energy_per_volume_derivative(double R) {
  if (!(R > 0)) throw ArgumentError("ball radius must be positive");
  return -3.0 / (R * R) + 8.0 * kPi / 5.0 * R;
}

double ball_energy_per_volume_second_derivative(double R) {
  if (!(R > 0)) throw ArgumentError("ball radius must be positive");
  return 6.0 / (R * R * R) + 8.0 * kPi / 5.0;
}

DropletConstants ball_optimum() {
  // dI/dR is increasing on (0, inf), negative at 0.1 and positive at 10
  std::uintmax_t iters = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      [](double R) { return ball_energy_per_volume_derivative(R); }, 0.1, 10.0,
      boost::math::tools::eps_tolerance<double>(52), iters);
  DropletConstants c;
  c.R_star = 0.5 * (bracket.first + bracket.second);
  c.mu_star = ball_energy_per_volume(c.R_star);
  c.m_star = 4.0 * kPi / 3.0 * c.R_star * c.R_star * c.R_star;
  c.m_star_star = c.m_star;
  return c;
}

nlohmann::json to_json(const DropletConstants& c) {
  return {{"R_star", c.R_star},
          {"mu_star", c.mu_star},
          {"m_star", c.m_star},
          {"m_star_star", c.m_star_star},
          {"m_star_rigorous_upper", c.m_star_rigorous_upper},
          {"m_star_star_rigorous_lower", c.m_star_star_rigorous_lower},
          {"minimizer_is_ball_conjectured", c.minimizer_is_ball_conjectured},
          {"restricted_to_balls", true}};
}

}  // namespace ldrop
