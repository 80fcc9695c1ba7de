#include "ldrop/coulomb/zeta.hpp"

#include <cmath>

#include "ldrop/coulomb/gamma.hpp"

namespace ldrop {

namespace {

constexpr double kShellCut = 46.0;   // largest pi |v|^2 kept
constexpr double kShellStep = 6.0;   // width of the last shell block used for the error

struct ThetaSums {
  double full;
  double inner;  // without the outermost block
};

// sum' Gamma(a, pi|v|^2) (pi|v|^2)^{-a}
ThetaSums theta_sum(const Lattice& L, double a) {
  const auto vecs = lattice_vectors_within(L, std::sqrt(kShellCut / kPi));
  ThetaSums t{0.0, 0.0};
  for (const auto& v : vecs) {
    const double x = kPi * v.squaredNorm();
    const double term = upper_incomplete_gamma(a, x) * std::exp(-a * std::log(x));
    t.full += term;
    if (x <= kShellCut - kShellStep) t.inner += term;
  }
  return t;
}

Lattice unit_covolume(const Lattice& L) { return scaled(L, 1.0 / std::cbrt(L.covolume())); }

struct Completed {
  double value;
  double error;
};

Completed completed(const Lattice& L1, double s) {
  if (std::abs(s - 3.0) < 1e-14) throw PoleError("Epstein zeta has a pole at s = 3");
  const Lattice D1 = dual_lattice(L1);
  const auto direct = theta_sum(L1, s / 2.0);
  const auto dual = theta_sum(D1, (3.0 - s) / 2.0);
  double poles = 2.0 / (s - 3.0);
  if (s != 0.0) poles -= 2.0 / s;
  return {poles + direct.full + dual.full,
          std::abs(direct.full - direct.inner) + std::abs(dual.full - dual.inner)};
}

}  // namespace

double completed_zeta(const Lattice& L, double s) {
  if (s == 0.0) throw PoleError("completed zeta has a pole at s = 0");
  return completed(unit_covolume(L), s).value;
}

ZetaValue epstein_zeta(const Lattice& L, double s) {
  if (!std::isfinite(s)) throw ArgumentError("s must be finite");
  if (std::abs(s - 3.0) < 1e-14) throw PoleError("Epstein zeta has a pole at s = 3");
  if (s <= 0.0 && std::abs(s / 2.0 - std::round(s / 2.0)) < 1e-15) {
    // Gamma(s/2) has a pole, Z(s) is finite except the -2/s term at s = 0
    return {s, s == 0.0 ? -0.5 : 0.0, 0.0};
  }
  const Lattice L1 = unit_covolume(L);
  const auto z = completed(L1, s);
  const double norm = 2.0 * std::exp(-s / 2.0 * std::log(kPi)) * std::tgamma(s / 2.0);
  // homogeneity: zeta_L(s) = V^{-s/3} zeta_{L1}(s)
  const double scale = std::exp(-s / 3.0 * std::log(L.covolume()));
  return {s, scale * z.value / norm, std::abs(scale * z.error / norm)};
}

}  // namespace ldrop
