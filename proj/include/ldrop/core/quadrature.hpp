#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace ldrop::quad {

// Adaptive Gauss-Kronrod on [a, b]; tol is relative to the L1 norm of f.
template <class F>
double adaptive(F&& f, double a, double b, double tol, double* err = nullptr) {
  double e = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 20, tol, &e);
  if (err) *err = e;
  return v;
}

// Fixed N-point Gauss-Legendre on [a, b].
template <unsigned N, class F>
double gauss(F&& f, double a, double b) {
  return boost::math::quadrature::gauss<double, N>::integrate(f, a, b);
}

}  // namespace ldrop::quad
