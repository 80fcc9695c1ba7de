#pragma once

namespace ldrop {

// Upper incomplete gamma Gamma(a, x) for real a and x > 0. Continued fraction
// for x >= a + 1, series otherwise; for a <= 0 the series branch recurses
// upward through Gamma(a, x) = (Gamma(a + 1, x) - x^a e^{-x}) / a.
double upper_incomplete_gamma(double a, double x);

}  // namespace ldrop
