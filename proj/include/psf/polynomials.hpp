#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include <json.hpp>

#include "psf/geometry.hpp"

namespace psf {

using MultiIndex = std::vector<int>;

// Graded lexicographic order on multi-indices (lower total degree first).
struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

// Dense multivariate polynomial with real coefficients, n variables.
class MultiPoly {
 public:
  MultiPoly() : MultiPoly(1) {}  // zero polynomial in one variable
  explicit MultiPoly(int dim);
  static MultiPoly monomial(int dim, MultiIndex alpha, double coeff);
  static MultiPoly constant(int dim, double value);

  int dim() const { return dim_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_homogeneous() const;
  bool is_zero(double tol = 0.0) const;
  const std::map<MultiIndex, double, GradedLess>& terms() const { return terms_; }

  double coeff(const MultiIndex& alpha) const;
  void set_coeff(const MultiIndex& alpha, double c);
  double max_abs_coeff() const;

  double eval(const Eigen::VectorXd& x) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(double s) const;
  MultiPoly pow(int k) const;

  // q(u,v) = p(u e1 + v e2) for an orthonormal pair; bivariate result.
  MultiPoly restrict_to_plane(const Direction& e1, const Direction& e2) const;

  nlohmann::json to_json() const;
  static MultiPoly from_json(const nlohmann::json& j);

 private:
  int dim_;
  std::map<MultiIndex, double, GradedLess> terms_;
  void prune(const MultiIndex& alpha);
};

// All multi-indices with |alpha| == degree, in graded-lex order.
std::vector<MultiIndex> homogeneous_basis(int dim, int degree);

struct FitResult {
  MultiPoly poly;
  // sup-norm misfit over the samples, normalized by max |value|.
  double residual = 0.0;
};

// Least-squares fit of a homogeneous degree-d polynomial to samples
// (point on the unit sphere, value), solved by Householder QR.
// Throws std::runtime_error (with the condition estimate in the message)
// when the sample matrix is numerically rank deficient.
FitResult fit_homogeneous(const std::vector<std::pair<Eigen::VectorXd, double>>& samples,
                          int degree);

struct RootCluster {
  std::complex<double> value;
  int multiplicity = 1;
};

// Roots of sum_k coeffs[k] u^k via the companion matrix, clustered into
// multiplicities with radius cluster_radius.
std::vector<RootCluster> roots_univariate(const std::vector<double>& coeffs,
                                          double cluster_radius = 1e-6);

// Least-squares polynomial square root: residual of the best S with
// S^2 ~ q (homogeneous). Residual > 1e-4 is read as "not a square".
double perfect_square_residual(const MultiPoly& q);

}  // namespace psf
