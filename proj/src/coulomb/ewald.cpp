#include "ldrop/coulomb/ewald.hpp"

#include <cmath>

namespace ldrop {

PeriodicKernel::PeriodicKernel(double side, double alpha, double tail_tol) : side_(side) {
  if (!(side > 0.0)) throw ArgumentError("cell side must be positive");
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw ArgumentError("tail tolerance must lie in (0, 1)");
  alpha_ = alpha > 0.0 ? alpha : kPi / (side * side);
  // erfc(c) and exp(-c^2) both sit well below tail_tol
  const double c = std::sqrt(-std::log(tail_tol)) + 1.0;
  const double sa = std::sqrt(alpha_);
  rc_ = c / sa;
  kc_ = 2.0 * c * sa;

  const double reach = rc_ + std::sqrt(3.0) * side / 2.0;
  const long nr = static_cast<long>(std::ceil(reach / side));
  for (long a = -nr; a <= nr; ++a)
    for (long b = -nr; b <= nr; ++b)
      for (long d = -nr; d <= nr; ++d) {
        const Vec3 t(a * side, b * side, d * side);
        if (t.norm() <= reach) images_.push_back(t);
      }

  const double dk = 2.0 * kPi / side;
  const long nk = static_cast<long>(std::ceil(kc_ / dk));
  const double vol = side * side * side;
  for (long a = 0; a <= nk; ++a)
    for (long b = -nk; b <= nk; ++b)
      for (long d = -nk; d <= nk; ++d) {
        // half space: first nonzero index positive
        if (a == 0 && (b < 0 || (b == 0 && d <= 0))) continue;
        const Vec3 k(a * dk, b * dk, d * dk);
        const double k2 = k.squaredNorm();
        if (k2 > kc_ * kc_) continue;
        kvecs_.push_back(k);
        kweights_.push_back(2.0 * 4.0 * kPi / vol * std::exp(-k2 / (4.0 * alpha_)) / k2);
      }
}

int PeriodicKernel::real_shells() const { return static_cast<int>(std::ceil(rc_ / side_)); }

int PeriodicKernel::recip_shells() const {
  return static_cast<int>(std::ceil(kc_ * side_ / (2.0 * kPi)));
}

Vec3 PeriodicKernel::minimum_image(const Vec3& x) const {
  Vec3 d;
  for (int i = 0; i < 3; ++i) d[i] = x[i] - side_ * std::round(x[i] / side_);
  return d;
}

double PeriodicKernel::value(const Vec3& x) const {
  const Vec3 d = minimum_image(x);
  const double sa = std::sqrt(alpha_);
  double real = 0.0;
  for (const auto& t : images_) {
    const double r = (d + t).norm();
    if (r < 1e-12 * side_) throw PoleError("periodic Green's function evaluated on the lattice");
    if (r < rc_) real += std::erfc(sa * r) / r;
  }
  double recip = 0.0;
  for (std::size_t i = 0; i < kvecs_.size(); ++i) recip += kweights_[i] * std::cos(kvecs_[i].dot(d));
  const double vol = side_ * side_ * side_;
  return real + recip - kPi / (alpha_ * vol);
}

Vec3 PeriodicKernel::gradient(const Vec3& x) const {
  const Vec3 d = minimum_image(x);
  const double sa = std::sqrt(alpha_);
  const double c = 2.0 * sa / std::sqrt(kPi);
  Vec3 g = Vec3::Zero();
  for (const auto& t : images_) {
    const Vec3 y = d + t;
    const double r = y.norm();
    if (r < 1e-12 * side_) throw PoleError("periodic Green's function evaluated on the lattice");
    if (r >= rc_) continue;
    const double dphi = -(std::erfc(sa * r) / r + c * std::exp(-alpha_ * r * r)) / r;
    g += dphi * y / r;
  }
  for (std::size_t i = 0; i < kvecs_.size(); ++i) g -= kweights_[i] * std::sin(kvecs_[i].dot(d)) * kvecs_[i];
  return g;
}

double PeriodicKernel::regular_part_at_origin() const {
  const double sa = std::sqrt(alpha_);
  double real = 0.0;
  for (const auto& t : images_) {
    const double r = t.norm();
    if (r == 0.0 || r >= rc_) continue;
    real += std::erfc(sa * r) / r;
  }
  double recip = 0.0;
  for (double w : kweights_) recip += w;
  const double vol = side_ * side_ * side_;
  return real + recip - kPi / (alpha_ * vol) - 2.0 * sa / std::sqrt(kPi);
}

double periodic_green(const PeriodicKernel& kernel, const Vec3& x) { return kernel.value(x); }

double madelung_z3() {
  static const double m = PeriodicKernel(1.0).regular_part_at_origin();
  return m;
}

}  // namespace ldrop
