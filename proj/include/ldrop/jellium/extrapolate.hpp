#pragma once

#include <string>
#include <vector>

namespace ldrop {

inline constexpr double kJelliumLowerBound = -1.4508;  // -(3/5)(9 pi / 2)^{1/3}
inline constexpr double kJelliumBccValue = -1.4442;    // zeta_BCC(1), conjectured e_Jel

struct SizeEnergy {
  double n;
  double per_particle;
};

struct ExtrapolationReport {
  double estimate = 0.0;       // a in e(N) = a + b N^{-1/3} + c N^{-2/3}, or the mean when flat
  double slope = 0.0;          // b
  bool monotone = false;       // per-particle energies ordered monotonically in N
  bool constant = false;       // all values agree to 1e-8
  bool above_lower_bound = false;  // every value >= kJelliumLowerBound - tolerance
  double tolerance = 1e-3;
  std::vector<SizeEnergy> data;
  std::string note;
};

// Needs at least 3 sizes; fits in N^{-1/3} (surface-like correction) when the data vary.
ExtrapolationReport e_jel_extrapolate(std::vector<SizeEnergy> data, double tolerance = 1e-3);

}  // namespace ldrop
