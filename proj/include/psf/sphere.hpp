#pragma once

#include <Eigen/Dense>
#include <vector>

namespace psf {

// Deterministic Fibonacci lattice on S^2.
std::vector<Eigen::VectorXd> fibonacci_sphere(int count);

// Deterministic direction set on S^{n-1} for any n >= 2.
// n == 3 uses the Fibonacci lattice; other dimensions map a Halton sequence
// through the inverse normal CDF and normalize. The seed offsets the
// sequence, so equal seeds give byte-identical sets.
std::vector<Eigen::VectorXd> sphere_directions(int dim, int count,
                                               unsigned seed = 0);

// Inverse of the standard normal CDF (Acklam's rational approximation with a
// Halley polish step; relative error far below 1e-12).
double inverse_normal_cdf(double p);

}  // namespace psf
