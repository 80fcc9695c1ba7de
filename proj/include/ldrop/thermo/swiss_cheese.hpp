#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ldrop {

struct CheeseRow {
  int j;
  std::string R;  // exact rational
  std::string n;  // exact integer
  double R_value;
  double n_value;
  double leftover_ratio;   // (|B_j| - sum_{i<j} n_{j-i} |B_i|) / (gamma^j |B_j|)
  double perimeter_ratio;  // sum_{i<j} n_{j-i} Per(B_i) / (gamma^j |B_j|)
  double boundary_ratio;   // Per(B_j) / (theta^j |B_j|)
};

struct SwissCheeseSchedule {
  int p = 26;
  double gamma = 26.0 / 27.0;
  double theta = 1.0 / 27.0;
  std::vector<CheeseRow> rows;  // j = 0..K
  double bound_constant = 0.0;  // smallest C with both ratios in [1/C, C] for j = 2..K
};

// R_j = (1 + p)^j (1 - theta^j / 2), n_j = gamma^j (1 + p)^{3j} / p in exact rationals.
SwissCheeseSchedule swiss_cheese(int K);

nlohmann::json to_json(const SwissCheeseSchedule& s);

}  // namespace ldrop
