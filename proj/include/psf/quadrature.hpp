#pragma once

#include <functional>
#include <vector>

namespace psf {

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a,b].
// Bisects until the local error estimate is below abs_tol (split
// proportionally across subintervals). Throws on subdivision exhaustion.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-10);

struct GaussRule {
  std::vector<double> nodes;    // on [-1,1]
  std::vector<double> weights;
};

// Gauss-Legendre rule, computed by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

}  // namespace psf
