#include "ldrop/expansion/trial.hpp"

#include <cmath>

namespace ldrop {

UnitCellJellium optimize_unit_cell(std::size_t n, const BasinHopParams& p) {
  if (n < 1) throw ArgumentError("trial points: N must be at least 1");
  UnitCellJellium u;
  u.n = n;
  u.search = basin_hop_periodic(n, 1.0, p);
  u.pair_unit = u.search.best_energy;
  u.x = u.search.best;
  recenter(u.x);
  return u;
}

TrialPoints build_trial_points(const UnitCellJellium& cell, double side, double c) {
  if (!(side > 0)) throw ArgumentError("trial points: side must be positive");
  if (!(c > 0)) throw ArgumentError("trial points: margin constant must be positive");
  const std::size_t n = cell.n;
  TrialPoints t;
  t.side = side;
  t.length_scale = side / std::cbrt(double(n));
  t.declared_c = c;
  const double lam = side / std::cbrt(double(n));
  t.X = cell.x;
  for (auto& p : t.X.x) p *= lam;
  recenter(t.X);

  int k = 1;
  while (std::size_t(k) * k * k < n) ++k;
  const double a = side / (k + 1);
  for (int i = 0; i < k && t.Y.size() < n; ++i)
    for (int j = 0; j < k && t.Y.size() < n; ++j)
      for (int l = 0; l < k && t.Y.size() < n; ++l)
        t.Y.x.push_back(Vec3(-side / 2 + (i + 1) * a, -side / 2 + (j + 1) * a, -side / 2 + (l + 1) * a));
  recenter(t.Y);
  double margin = side;
  for (const auto& y : t.Y.x)
    for (int d = 0; d < 3; ++d) margin = std::min(margin, side / 2 - std::abs(y[d]));
  double sep = n >= 2 ? side : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sep = std::min(sep, (t.Y.x[i] - t.Y.x[j]).norm());
  t.boundary_margin = margin;
  t.min_separation_y = sep;
  const double limit = std::min(margin, n >= 2 ? sep : margin) / t.length_scale;
  t.used_c = c;
  if (limit < c) {
    t.used_c = limit;
    t.warning = "margin constant reduced from " + std::to_string(c) + " to " + std::to_string(limit);
  }
  return t;
}

TrialPoints build_trial_points(std::size_t n, double side, const BasinHopParams& p, double c) {
  return build_trial_points(optimize_unit_cell(n, p), side, c);
}

}  // namespace ldrop
