#include "ldrop/expansion/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "ldrop/core/types.hpp"

namespace ldrop {

CoefficientFit extract_coefficients(const std::vector<double>& rho, const std::vector<double>& e,
                                    bool with_quadratic) {
  if (rho.size() != e.size()) throw ArgumentError("fit: rho and energy lists differ in length");
  const int cols = with_quadratic ? 3 : 2;
  const std::size_t n = rho.size();
  if (n < std::size_t(cols) + 1)
    throw NumericError("fit: " + std::to_string(n) + " points cannot determine " + std::to_string(cols) +
                       " coefficients with a residual (ill-conditioned grid)");
  for (double r : rho)
    if (!(r > 0)) throw ArgumentError("fit: densities must be positive");
  Eigen::MatrixXd a(n, cols);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, 0) = rho[i];
    a(i, 1) = std::pow(rho[i], 4.0 / 3.0);
    if (with_quadratic) a(i, 2) = rho[i] * rho[i];
    b[i] = e[i];
  }
  // scale columns to unit norm so the condition number reflects the grid, not units
  Eigen::VectorXd scale(cols);
  for (int c = 0; c < cols; ++c) {
    scale[c] = a.col(c).norm();
    a.col(c) /= scale[c];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  CoefficientFit f;
  f.with_quadratic = with_quadratic;
  f.condition = sv[0] / sv[sv.size() - 1];
  if (!(f.condition < 1e10)) throw NumericError("fit: ill-conditioned grid (condition " + std::to_string(f.condition) + ")");
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b).cwiseQuotient(scale);
  f.c1 = c[0];
  f.c2 = c[1];
  if (with_quadratic) f.c3 = c[2];
  for (int k = 0; k < cols; ++k) a.col(k) *= scale[k];
  const Eigen::VectorXd res = a * c - b;
  f.residual = res.cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
  f.decades = std::log10(*hi / *lo);
  if (f.decades < 2.0) f.warning = "grid spans fewer than 2 decades";
  return f;
}

}  // namespace ldrop
