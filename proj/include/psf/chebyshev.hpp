#pragma once

#include <vector>

namespace psf {

// Chebyshev-Lobatto nodes on [a,b], endpoints included, descending from b to a
// for index 0..n (n+1 points). node(k) = mid + half*cos(pi*k/n).
std::vector<double> chebyshev_lobatto_nodes(double a, double b, int count);

// Interpolant through values at Chebyshev-Lobatto nodes of [a,b].
// Stores the Chebyshev coefficient expansion; differentiation is done on the
// coefficients (exact for the interpolating polynomial).
class ChebInterp {
 public:
  ChebInterp(double a, double b, std::vector<double> node_values);

  double lower() const { return a_; }
  double upper() const { return b_; }
  int coeff_count() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<double>& coeffs() const { return coeffs_; }

  // Copy with coefficients below rel_eps * max|c| zeroed. High-order
  // differentiation amplifies the roundoff tail (by ~j^(2k) at the center);
  // chopping removes it, and is exact for polynomial data.
  ChebInterp chopped(double rel_eps = 1e-13) const;

  double eval(double t) const;
  // k-th derivative at t.
  double derivative(double t, int k) const;
  // Exact integral of the interpolant over [a,b].
  double integral() const;
  ChebInterp derivative_interp() const;

 private:
  ChebInterp(double a, double b, std::vector<double> coeffs, int);
  double a_, b_;
  std::vector<double> coeffs_;
};

}  // namespace psf
