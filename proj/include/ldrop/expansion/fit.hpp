#pragma once

#include <string>
#include <vector>

namespace ldrop {

struct CoefficientFit {
  double c1 = 0.0;  // rho
  double c2 = 0.0;  // rho^{4/3}
  double c3 = 0.0;  // rho^2, when requested
  bool with_quadratic = false;
  double residual = 0.0;          // max |model - data| / max |data|
  double condition = 0.0;         // of the column-scaled design matrix
  double decades = 0.0;           // log10(max rho / min rho)
  std::string warning;
};

// Least squares e = c1 rho + c2 rho^{4/3} (+ c3 rho^2). Needs more points than
// coefficients; throws NumericError when the design is ill-conditioned.
CoefficientFit extract_coefficients(const std::vector<double>& rho, const std::vector<double>& e,
                                    bool with_quadratic = true);

}  // namespace ldrop
