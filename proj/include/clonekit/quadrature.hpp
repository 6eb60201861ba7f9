#pragma once

#include <vector>

namespace clonekit {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule mapped to [a, b]. Exact for polynomials of degree 2n - 1.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

// n equispaced nodes on [0, period) with weights 1/n (the periodic trapezoid rule).
// Exact for trigonometric polynomials with frequencies |k| < n.
QuadratureRule uniform_periodic(int n, double period);

}  // namespace clonekit
