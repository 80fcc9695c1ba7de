#pragma once

#include <vector>

#include "json.hpp"

namespace ldrop {

struct RecursionCertificate {
  std::vector<double> g;  // g_K = f_K - (1 - gamma)/gamma sum_{j<K} gamma^{K-j} f_j
  double limit = 0.0;     // (1 - gamma) sum_j g_j over the horizon
  double last = 0.0;      // f at the horizon
  double gap = 0.0;       // |last - limit|, what the horizon leaves unresolved
  double delta_sum = 0.0; // sum of delta over the horizon
};

// Checks g_K <= delta_K for every K and returns the limit candidate. Throws
// NumericError naming the first K where the hypothesis fails.
RecursionCertificate recursion_limit(const std::vector<double>& f, double gamma, const std::vector<double>& delta);

nlohmann::json to_json(const RecursionCertificate& c);

}  // namespace ldrop
