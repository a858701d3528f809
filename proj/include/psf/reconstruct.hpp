#pragma once

#include <functional>
#include <optional>
#include <string>

#include "psf/geometry.hpp"
#include "psf/polynomials.hpp"

namespace psf {

// x -> P(x) + sqrt(Q(x)). Unique normal form when Q is not a perfect square.
struct RadicalExpr {
  MultiPoly P;
  MultiPoly Q;
  double eval(const Eigen::VectorXd& x) const;
};

struct PQFit {
  MultiPoly P;  // degree-1 fit of ||x|| - ||-x||
  MultiPoly Q;  // degree-2 fit of ||x||^2 + ||-x||^2
  double residual_P = 0.0;  // sup-norm misfits on the sample sphere
  double residual_Q = 0.0;
  double max_residual() const { return std::max(residual_P, residual_Q); }
};

PQFit fit_P_Q(const Body& body, int sphere_samples = 200);

// Sup-norm residual of ||x||_K = (P(x) + sqrt(2Q(x) - P^2(x))) / 2 on the
// sphere. Throws when the radicand goes negative (P,Q not from a valid body).
double minkowski_from_PQ(const Body& body, const MultiPoly& P, const MultiPoly& Q,
                         int sphere_samples = 200);

struct QuadricFit {
  Eigen::MatrixXd E;
  Eigen::VectorXd b;
  double c = 0.0;
  enum class Class { Ellipsoid, Other } classification = Class::Other;
  std::string diagnostics;
  // Center form {(x-c0)' M (x-c0) = 1} when classified as an ellipsoid.
  std::optional<Body::EllipsoidForm> center_form;
};

// Boundary equation (2 - P)^2 = 2Q - P^2 expanded exactly into
// x'Ex + b.x + c = 0 and classified by definiteness and boundedness.
QuadricFit boundary_quadric(const MultiPoly& P, const MultiPoly& Q);

struct BFit {
  MultiPoly B;  // degree-2 fit of ||x|| * ||-x||
  double residual = 0.0;
};

BFit product_body_B(const Body& body, int sphere_samples = 200);

// Sup-norm misfit of ||x||^{2k+1} = (T_k + sqrt(T_k^2 + 4 B^{2k+1})) / 2,
// k in {1,2,3}. Requires product_body_B residual < 1e-6.
double odd_power_radical_check(const Body& body, int k, int sphere_samples = 500);

// |(||u+v||^2 + ||u-v||^2 - 2||u||^2 - 2||v||^2)| / (2||u||^2 + 2||v||^2).
double parallelogram_violation(const Body& body, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& v);

// Max violation over random pairs; throws unless the body is origin-symmetric
// (checked numerically to 1e-10 on sample points).
double parallelogram_test(const Body& body, int trials, unsigned seed = 1);

// Residual of a bivariate quadratic-form fit to the squared norm on the unit
// circle of the plane span(e1, e2); 64 circle points, relative sup-norm.
double section_ellipse_check(const Body& body, const Direction& e1, const Direction& e2);
double section_ellipse_check_fn(const std::function<double(const Eigen::VectorXd&)>& norm_fn,
                                const Direction& e1, const Direction& e2);

struct ReconstructionResult {
  PQFit pq;
  double identity_residual = 0.0;  // minkowski_from_PQ stage
  QuadricFit quadric;
  bool is_ellipsoid = false;
  std::string failing_stage;  // empty on success
  // Match metrics against the catalog ground truth when available (< 0 when
  // the body has no quadratic form), plus the boundary identity residual.
  double matrix_rel_error = -1.0;
  double center_abs_error = -1.0;
  double boundary_residual = -1.0;
};

ReconstructionResult reconstruct_ellipsoid(const Body& body, int sphere_samples = 200);

}  // namespace psf
