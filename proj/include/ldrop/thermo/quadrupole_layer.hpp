#pragma once

#include <vector>

#include "json.hpp"
#include "ldrop/geom/domain.hpp"

namespace ldrop {

struct Box {
  Vec3 lo;
  double side = 0.0;
  Vec3 center() const { return lo + Vec3::Constant(0.5 * side); }
  double volume() const { return side * side * side; }
};

enum class PieceKind {
  SmallFull = 1,  // one eps/K cube outside Lambda
  LargeAlone = 2, // one eps cube with nothing attached
  LargeMerged = 3 // eps cube plus the partial small cubes attached to it
};

struct PieceDiagnostics {
  double charge = 0.0;            // |Omega_a| - rho |Lambda_a|
  Vec3 dipole = Vec3::Zero();     // int y (1_Omega - rho 1_Lambda)
  Mat3 quadrupole = Mat3::Zero(); // int (y y^T - |y|^2 I / 3)(1_Omega - rho 1_Lambda), about the center of mass
  double perimeter_constant = 0.0;  // Per(Omega_a) / (rho^{2/3} eps^2)
  double shift = 0.0;             // |com(Lambda_a) - host center|
  double decay_exponent = 0.0;    // filled by piece_decay_exponent
};

struct QuadrupolePiece {
  PieceKind kind = PieceKind::LargeAlone;
  Box host;                  // the full cube that contains Omega
  std::vector<Box> partial;  // sub-cells of the attached partial cubes (outside Lambda)
  Box omega;                 // cube of volume rho |Lambda_a| at the center of mass
  double volume = 0.0;       // |Lambda_a|
  Vec3 com = Vec3::Zero();
  PieceDiagnostics diag;
};

struct QuadrupoleLayerParams {
  double eps = 0.25;
  int K = 8;
  double rho = 0.3;
  // Partial cubes C' \ Lambda are resolved on a grid of side eps / (K M); sub-cells whose
  // center lies outside Lambda are kept, so every moment is a sum of exact box moments.
  int subdivision = 2;
  // A partial cube may join any outside cell whose gap to it is within this many eps of
  // the smallest gap; the candidate whose center of mass moves least wins. 0 keeps only
  // the nearest cells.
  double association_window = 1.0;
};

struct QuadrupoleLayer {
  QuadrupoleLayerParams params;
  std::vector<QuadrupolePiece> pieces;
  std::size_t count[3] = {0, 0, 0};  // by kind
  double max_perimeter_constant = 0.0;
  double max_shift_constant = 0.0;    // max |com - host center| (K + 1) / eps
  double max_dipole = 0.0;
  double max_charge = 0.0;
  double max_attached = 0.0;          // partial small cubes on one host, over K^2
  double layer_volume = 0.0;
};

// Outer cubic boundary layer of a ball or an axis-aligned cube, split into neutral
// dipole-free pieces. Throws ArgumentError naming the piece when Omega leaves its host.
QuadrupoleLayer quadrupole_layer(const Domain& lambda, const QuadrupoleLayerParams& p);

// Box moments of the signed charge; recomputes diag (without the decay exponent).
PieceDiagnostics piece_diagnostics(const QuadrupolePiece& piece, double rho, double eps, int K);

// Potential of 1_Omega - rho 1_Lambda at x, from closed-form box potentials.
double piece_potential(const QuadrupolePiece& piece, double rho, const Vec3& x);

// Minus the slope of log |potential| against log r along the dominant eigenvector of Q,
// seven radii log-spaced in [r_lo eps, r_hi eps]. Below about 8 eps the octupole part of a
// merged piece still bends the slope.
double piece_decay_exponent(const QuadrupolePiece& piece, double rho, double eps, double r_lo = 16.0,
                            double r_hi = 128.0);

nlohmann::json to_json(const QuadrupolePiece& p);
nlohmann::json summary_json(const QuadrupoleLayer& l);

}  // namespace ldrop
