#include "ldrop/coulomb/gamma.hpp"

#include <cmath>
#include <limits>

#include "ldrop/core/types.hpp"

namespace ldrop {

namespace {

// modified Lentz evaluation of the Legendre continued fraction
double gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return std::exp(-x + a * std::log(x)) * h;
  }
  throw NumericError("incomplete gamma continued fraction did not converge");
}

// lower incomplete gamma by its power series, a > 0
double gamma_series(double a, double x) {
  double ap = a, del = 1.0 / a, sum = del;
  for (int n = 0; n < 1000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-17) return sum * std::exp(-x + a * std::log(x));
  }
  throw NumericError("incomplete gamma series did not converge");
}

}  // namespace

double upper_incomplete_gamma(double a, double x) {
  if (!(x > 0.0)) throw ArgumentError("incomplete gamma needs x > 0");
  if (x >= a + 1.0) return gamma_cf(a, x);
  if (a > 0.0) return std::tgamma(a) - gamma_series(a, x);
  if (a == 0.0 || (a < 0.0 && a == std::floor(a))) {
    // integer a <= 0: recurse from a = 1 where Gamma(1, x) = e^{-x}
    double g = std::exp(-x);
    for (double b = 0.0; b >= a; b -= 1.0) {
      if (b == 0.0) {
        // E1(x) by series
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 500; ++k) {
          term *= -x / k;
          sum += term / k;
          if (std::abs(term / k) < 1e-17 * std::abs(sum)) break;
        }
        g = -0.57721566490153286061 - std::log(x) - sum;
      } else {
        g = (g - std::exp(b * std::log(x) - x)) / b;
      }
    }
    return g;
  }
  return (upper_incomplete_gamma(a + 1.0, x) - std::exp(a * std::log(x) - x)) / a;
}

}  // namespace ldrop
