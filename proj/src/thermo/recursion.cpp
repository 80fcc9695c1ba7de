#include "ldrop/thermo/recursion.hpp"

#include <cmath>

#include "ldrop/core/types.hpp"

namespace ldrop {

RecursionCertificate recursion_limit(const std::vector<double>& f, double gamma, const std::vector<double>& delta) {
  if (!(gamma > 0 && gamma < 1)) throw ArgumentError("recursion: gamma must lie in (0, 1)");
  if (f.empty()) throw ArgumentError("recursion: empty sequence");
  if (delta.size() < f.size()) throw ArgumentError("recursion: delta shorter than f");
  RecursionCertificate c;
  double weighted = 0.0;  // sum_{j<K} gamma^{K-j} f_j
  double sum_g = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (delta[k] < 0) throw ArgumentError("recursion: delta must be nonnegative (K=" + std::to_string(k) + ")");
    const double g = f[k] - (1.0 - gamma) / gamma * weighted;
    if (g > delta[k] + 1e-12 * std::max(1.0, std::abs(f[k])))
      throw NumericError("recursion: hypothesis f_K <= (1-gamma)/gamma sum gamma^{K-j} f_j + delta_K fails at K=" +
                         std::to_string(k));
    c.g.push_back(g);
    sum_g += g;
    c.delta_sum += delta[k];
    weighted = gamma * (weighted + f[k]);
  }
  c.limit = (1.0 - gamma) * sum_g;
  c.last = f.back();
  c.gap = std::abs(c.last - c.limit);
  return c;
}

nlohmann::json to_json(const RecursionCertificate& c) {
  return {{"limit", c.limit}, {"last", c.last}, {"gap", c.gap}, {"delta_sum", c.delta_sum}, {"horizon", c.g.size()}};
}

}  // namespace ldrop
