#pragma once

#include <string>
#include <vector>

#include "psf/fracderiv.hpp"
#include "psf/geometry.hpp"

namespace psf {

struct IdentityCheck {
  std::string body;
  int k = 0;
  Eigen::VectorXd xi;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  // True when both sides vanish by symmetry and the check is consistency,
  // not an independent comparison (odd orders on symmetric bodies).
  bool consistency_only = false;
};

// Constant c(n,p) in (|x|^p)^ = c(n,p) |xi|^{-n-p}, for -n < p < 0 away from
// the Gamma poles: c = 2^{n+p} pi^{n/2} Gamma((n+p)/2) / Gamma(-p/2).
double ft_radial_power_constant(int n, double p);

// Independent check of c(n,p) by pairing both sides with Gaussians at the
// given scales; both integrals are radial and evaluated by adaptive
// quadrature. Returns the max relative deviation over the scales.
double gaussian_pairing_max_rel_dev(int n, double p,
                                    const std::vector<double>& scales = {0.5, 1.0, 2.0});

// Validation of the ellipsoid change of variables
//   (||x||_M^p)^(xi) = (det M)^{-1/2} c(n,p) (xi' M^{-1} xi)^{(-n-p)/2}
// by Gaussian pairing (n = 3 only; radial x angular product quadrature).
double ellipsoid_ft_reduction_rel_dev(const Eigen::MatrixXd& M, double p, double scale);

// Even-order identity: A^(k)(0) against the Fourier side, both evaluated
// independently (balls and centered ellipsoids, 0 <= k < n-1, k even).
// With numeric_lhs the profile comes from the spherical quadrature path.
IdentityCheck verify_even_identity(const Body& body, int k, const Direction& xi,
                                   bool numeric_lhs = false);

// Odd-order identity on origin-symmetric bodies: the Fourier side vanishes
// identically, so this only checks |A^(k)(0)| ~ 0.
IdentityCheck verify_odd_identity_symmetric(const Body& body, int k, const Direction& xi);

}  // namespace psf
