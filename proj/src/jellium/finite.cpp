#include "ldrop/jellium/finite.hpp"

#include <cmath>
#include <string>

#include "ldrop/coulomb/pair.hpp"
#include "ldrop/coulomb/potentials.hpp"

namespace ldrop {

FiniteJellium::FiniteJellium(Domain domain, double q, double background, double tol)
    : domain_(std::move(domain)), q_(q), rho_(background) {
  validate(domain_);
  if (!(background >= 0)) throw ArgumentError("finite jellium: background density must be >= 0");
  bb_ = rho_ == 0.0 ? 0.0 : 0.5 * rho_ * rho_ * domain_pair_coulomb(domain_, domain_, tol);
}

double FiniteJellium::energy(const std::vector<Vec3>& x, std::vector<Vec3>* grad) const {
  const std::size_t n = x.size();
  if (grad) grad->assign(n, Vec3::Zero());
  const double q2 = q_ * q_;
  double pair = 0.0, pb = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 d = x[i] - x[j];
      const double r = d.norm();
      if (r == 0.0) throw PoleError("finite jellium: coincident points " + std::to_string(i) + " and " + std::to_string(j));
      pair += 1.0 / r;
      if (grad) {
        const Vec3 g = (-q2 / (r * r * r)) * d;
        (*grad)[i] += g;
        (*grad)[j] -= g;
      }
    }
  if (rho_ != 0.0)
    for (std::size_t i = 0; i < n; ++i) {
      const auto pv = domain_potential_with_gradient(domain_, x[i]);
      pb += pv.value;
      if (grad) (*grad)[i] -= q_ * rho_ * pv.gradient;
    }
  return q2 * pair - q_ * rho_ * pb + bb_;
}

JelliumEnergyReport FiniteJellium::report(const std::vector<Vec3>& x) const {
  JelliumEnergyReport r;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = (x[i] - x[j]).norm();
      if (d == 0.0) throw PoleError("finite jellium: coincident points " + std::to_string(i) + " and " + std::to_string(j));
      r.pair += q_ * q_ / d;
    }
  if (rho_ != 0.0)
    for (const auto& p : x) r.point_background -= q_ * rho_ * domain_potential(domain_, p);
  r.background_background = bb_;
  return finish_report(r, x.size());
}

JelliumEnergyReport finite_jellium_energy(const PointConfiguration& cfg, const Domain& domain,
                                          double background, double tol) {
  for (std::size_t i = 0; i < cfg.size(); ++i)
    if (!contains_strictly(domain, cfg.x[i]))
      throw ArgumentError("finite jellium: point " + std::to_string(i) + " is not inside the domain");
  return FiniteJellium(domain, cfg.q, background, tol).report(cfg.x);
}

}  // namespace ldrop
