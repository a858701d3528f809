#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

namespace psf {

// Unit vector on S^{n-1}.
class Direction {
 public:
  explicit Direction(Eigen::VectorXd coords);
  static Direction normalized(const Eigen::VectorXd& v);

  int dim() const { return static_cast<int>(v_.size()); }
  const Eigen::VectorXd& coords() const { return v_; }
  double operator[](int i) const { return v_[i]; }
  Direction operator-() const;

 private:
  Eigen::VectorXd v_;
};

// Support interval of the non-empty parallel sections in a direction.
struct Chord {
  double t_min = 0.0;
  double t_max = 0.0;
  double length() const { return t_max - t_min; }
  bool contains(double t) const { return t >= t_min && t <= t_max; }
};

// Star/convex body from the built-in catalog, exposed through its Minkowski
// functional. Closed-form fast paths exist for balls, ellipsoids and their
// shifts; the superellipsoid is the smooth non-ellipsoid control.
class Body {
 public:
  enum class Kind { Ball, Ellipsoid, Superellipsoid, Shifted, Custom };

  static Body ball(int dim, double radius);
  // {x : (x-c)^T M (x-c) <= 1}, M symmetric positive definite, origin interior.
  static Body ellipsoid(Eigen::MatrixXd matrix, Eigen::VectorXd center);
  // Unit ball of the l^p norm, even p >= 4.
  static Body superellipsoid(int dim, int p);
  static Body shifted(Body inner, Eigen::VectorXd offset);
  // Catalog of fixed custom star bodies; currently "bumpy" (non-convex, n=3).
  static Body custom(const std::string& id, int dim);

  int dim() const;
  Kind kind() const;
  bool convex() const;
  bool origin_symmetric() const;
  std::string describe() const;

  // Minkowski functional ||x||_K; positive homogeneous of degree 1.
  double minkowski(const Eigen::VectorXd& x) const;
  // Radial function 1/||theta||_K; boundary point is radial * theta.
  double radial(const Direction& theta) const;
  // Support function max_{x in K} (x, xi). Convex bodies only.
  double support(const Direction& xi) const;
  Chord chord(const Direction& xi) const;

  // (M, c) with K = {(x-c)^T M (x-c) <= 1} when the body is a (possibly
  // shifted) ball or ellipsoid; nullopt otherwise.
  struct EllipsoidForm {
    Eigen::MatrixXd M;
    Eigen::VectorXd center;
  };
  std::optional<EllipsoidForm> ellipsoid_form() const;

  static Body from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  struct Impl;  // definition local to geometry.cpp

 private:
  explicit Body(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Deterministic orthonormal basis of xi-perp, columns of an n x (n-1) matrix,
// built from the Householder reflection taking e_1 to xi.
Eigen::MatrixXd orthonormal_frame(const Direction& xi);

// Support value by coarse spherical scan plus local refinement; the generic
// fallback used to cross-check the closed forms in tests.
double support_by_scan(const Body& body, const Direction& xi,
                       int scan_points = 4000);

}  // namespace psf
