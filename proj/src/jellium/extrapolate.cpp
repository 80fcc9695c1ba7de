#include "ldrop/jellium/extrapolate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ldrop/core/types.hpp"

namespace ldrop {

ExtrapolationReport e_jel_extrapolate(std::vector<SizeEnergy> data, double tolerance) {
  if (data.size() < 3) throw ArgumentError("extrapolation needs at least 3 sizes");
  std::sort(data.begin(), data.end(), [](const SizeEnergy& a, const SizeEnergy& b) { return a.n < b.n; });
  for (std::size_t i = 1; i < data.size(); ++i)
    if (data[i].n == data[i - 1].n) throw ArgumentError("extrapolation: repeated size");
  ExtrapolationReport r;
  r.data = data;
  r.tolerance = tolerance;
  bool up = true, down = true;
  double lo = data[0].per_particle, hi = lo;
  for (std::size_t i = 1; i < data.size(); ++i) {
    up = up && data[i].per_particle >= data[i - 1].per_particle;
    down = down && data[i].per_particle <= data[i - 1].per_particle;
    lo = std::min(lo, data[i].per_particle);
    hi = std::max(hi, data[i].per_particle);
  }
  r.monotone = up || down;
  r.constant = hi - lo <= 1e-8 * std::max(1.0, std::abs(hi));
  r.above_lower_bound = lo >= kJelliumLowerBound - tolerance;
  if (r.constant) {
    double s = 0.0;
    for (const auto& d : data) s += d.per_particle;
    r.estimate = s / double(data.size());
    r.note = "no size dependence";
    return r;
  }
  const int cols = data.size() >= 4 ? 3 : 2;
  Eigen::MatrixXd a(data.size(), cols);
  Eigen::VectorXd b(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double t = std::cbrt(1.0 / data[i].n);
    a(i, 0) = 1.0;
    a(i, 1) = t;
    if (cols == 3) a(i, 2) = t * t;
    b[i] = data[i].per_particle;
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  r.estimate = c[0];
  r.slope = c[1];
  r.note = cols == 3 ? "quadratic fit in N^{-1/3}" : "linear fit in N^{-1/3}";
  return r;
}

}  // namespace ldrop
