#pragma once

#include "ldrop/geom/lattice.hpp"

namespace ldrop {

struct ZetaValue {
  double s;
  double value;
  double error;  // change between the last two shell truncations
};

// zeta_L(s) = 1/2 sum_{v in L, v != 0} |v|^{-s}, continued to all real s != 3.
// Nonpositive even s: zeta(0) = -1/2 and zeta(-2k) = 0 from the pole of Gamma(s/2).
ZetaValue epstein_zeta(const Lattice& L, double s);

// Completed function Z(s) = pi^{-s/2} Gamma(s/2) 2 zeta_L(s) of the lattice L
// rescaled to unit covolume. Satisfies Z_L(s) = Z_{L*}(3 - s).
double completed_zeta(const Lattice& L, double s);

}  // namespace ldrop
