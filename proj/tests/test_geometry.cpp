#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psf/geometry.hpp"
#include "psf/sphere.hpp"

using namespace psf;
using Eigen::Vector3d;
constexpr double pi = std::numbers::pi;

static Direction dir3(double x, double y, double z) {
  return Direction::normalized(Vector3d(x, y, z));
}

TEST_CASE("ball functional, support, chord") {
  const Body b = Body::ball(3, 2.0);
  CHECK(b.minkowski(Vector3d(2, 0, 0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.minkowski(Vector3d(1, 1, 1)) == doctest::Approx(std::sqrt(3.0) / 2.0));
  CHECK(b.support(dir3(0, 1, 0)) == doctest::Approx(2.0));
  const Chord c = b.chord(dir3(1, 2, 3));
  CHECK(c.t_min == doctest::Approx(-2.0));
  CHECK(c.t_max == doctest::Approx(2.0));
  CHECK(b.convex());
  CHECK(b.origin_symmetric());
}

TEST_CASE("minkowski functional is positively homogeneous") {
  const Body e = Body::ellipsoid(Vector3d(1.0, 0.25, 1.0 / 9.0).asDiagonal(),
                                 Vector3d(0.1, -0.2, 0.3));
  const Vector3d x(0.3, -1.1, 0.7);
  const double n1 = e.minkowski(x);
  for (double s : {0.5, 2.0, 7.3})
    CHECK(e.minkowski(s * x) == doctest::Approx(s * n1).epsilon(1e-12));
}

TEST_CASE("ellipsoid support function closed form") {
  const Body e = Body::ellipsoid(Vector3d(1.0, 4.0, 9.0).asDiagonal(), Vector3d::Zero());
  CHECK(e.support(dir3(1, 0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.support(dir3(0, 1, 0)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e.support(dir3(0, 0, 1)) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // Generic direction: cross-check against the scan-based evaluator.
  for (const auto& v : sphere_directions(3, 6, 7)) {
    const Direction xi(v);
    CHECK(e.support(xi) == doctest::Approx(support_by_scan(e, xi)).epsilon(1e-5));
  }
}

TEST_CASE("shifted ball: boundary, support, ellipsoid form") {
  const Vector3d d(0.7, 0.0, 0.0);
  const Body s = Body::shifted(Body::ball(3, 1.0), d);
  CHECK(!s.origin_symmetric());
  // Boundary point in direction theta satisfies |r theta - d| = 1.
  for (const auto& v : sphere_directions(3, 16, 1)) {
    const Direction theta(v);
    const double r = s.radial(theta);
    CHECK((r * theta.coords() - d).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(s.support(dir3(1, 0, 0)) == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(s.support(dir3(-1, 0, 0)) == doctest::Approx(0.3).epsilon(1e-12));
  const auto ef = s.ellipsoid_form();
  REQUIRE(ef.has_value());
  CHECK((ef->M - Eigen::Matrix3d::Identity()).norm() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK((ef->center - d).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("shifted ball ray value") {
  // offset (0.3,0,0), x = e1: a solves |1/a - 0.3| = 1, so a = 1/1.3.
  const Body s = Body::shifted(Body::ball(3, 1.0), Vector3d(0.3, 0, 0));
  CHECK(s.minkowski(Vector3d(1, 0, 0)) == doctest::Approx(1.0 / 1.3).epsilon(1e-12));
}

TEST_CASE("superellipsoid functional is the lp norm") {
  const Body q = Body::superellipsoid(3, 4);
  const Vector3d x(1.0, 1.0, 1.0);
  CHECK(q.minkowski(x) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-13));
  // radial at (1,1,0)/sqrt(2) is (1/2)^(-1/4).
  CHECK(q.radial(Direction::normalized(Vector3d(1, 1, 0))) ==
        doctest::Approx(std::pow(0.5, -0.25)).epsilon(1e-13));
  // Dual-norm support value against the scan oracle.
  const Direction xi = dir3(1, 2, -1);
  CHECK(q.support(xi) == doctest::Approx(support_by_scan(q, xi)).epsilon(1e-5));
  CHECK(q.convex());
  CHECK(!q.ellipsoid_form().has_value());
}

TEST_CASE("custom bumpy body is a star body") {
  const Body b = Body::custom("bumpy", 3);
  CHECK(!b.convex());
  for (const auto& v : sphere_directions(3, 12, 2)) {
    const Direction theta(v);
    const double r = b.radial(theta);
    CHECK(r > 0.0);
    CHECK(b.minkowski(r * theta.coords()) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS(b.support(dir3(1, 0, 0)));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Body::ball(3, -1.0), std::invalid_argument);
  Eigen::Matrix3d notpd = Vector3d(1.0, -1.0, 1.0).asDiagonal();
  CHECK_THROWS_AS(Body::ellipsoid(notpd, Vector3d::Zero()), std::invalid_argument);
  // Origin must be interior.
  CHECK_THROWS_AS(Body::ellipsoid(Eigen::Matrix3d::Identity(), Vector3d(2, 0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Body::superellipsoid(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(Body::superellipsoid(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(Body::shifted(Body::ball(3, 1.0), Vector3d(1.5, 0, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Direction(Vector3d(1, 1, 0)), std::invalid_argument);
}

TEST_CASE("orthonormal frame spans the orthogonal complement") {
  for (const auto& v : sphere_directions(3, 10, 5)) {
    const Direction xi(v);
    const Eigen::MatrixXd F = orthonormal_frame(xi);
    REQUIRE(F.cols() == 2);
    CHECK((F.transpose() * F - Eigen::Matrix2d::Identity()).norm() ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK((F.transpose() * xi.coords()).norm() == doctest::Approx(0.0).epsilon(1e-12));
  }
  // Near-e1 direction exercises the reflection fallback.
  const Direction e1 = dir3(1, 1e-12, 0);
  const Eigen::MatrixXd F = orthonormal_frame(e1);
  CHECK((F.transpose() * e1.coords()).norm() < 1e-10);
}

TEST_CASE("json round trip") {
  const Body e = Body::ellipsoid(Vector3d(1.0, 4.0, 9.0).asDiagonal(), Vector3d(0.1, 0, 0));
  const Body back = Body::from_json(e.to_json());
  const Vector3d x(0.2, 0.5, -0.4);
  CHECK(back.minkowski(x) == doctest::Approx(e.minkowski(x)).epsilon(1e-14));
  CHECK_THROWS(Body::from_json(nlohmann::json{{"type", "torus"}}));
  CHECK_THROWS(Body::from_json(nlohmann::json{{"type", "ball"}}));  // missing fields
}

TEST_CASE("5d ball sanity") {
  const Body b = Body::ball(5, 1.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
  x[4] = 0.5;
  CHECK(b.minkowski(x) == doctest::Approx(0.5));
  CHECK(b.dim() == 5);
}
