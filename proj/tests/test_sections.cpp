#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psf/parallel.hpp"
#include "psf/sections.hpp"
#include "psf/sphere.hpp"

using namespace psf;
using Eigen::Vector3d;
constexpr double pi = std::numbers::pi;

static Direction dir3(double x, double y, double z) {
  return Direction::normalized(Vector3d(x, y, z));
}

TEST_CASE("unit ball volumes") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0));
  CHECK(unit_ball_volume(4) == doctest::Approx(pi * pi / 2.0));
}

TEST_CASE("ball slice areas, n=3") {
  const Body b = Body::ball(3, 1.0);
  const Direction xi = dir3(1, 2, 3);
  for (double t : {0.0, 0.25, 0.5, 0.9})
    CHECK(section_area(b, xi, t) == doctest::Approx(pi * (1.0 - t * t)).epsilon(1e-12));
  CHECK(section_area(b, xi, 1.5) == 0.0);
  CHECK_THROWS_AS(section_area(b, xi, 1.5, true), std::out_of_range);
}

TEST_CASE("closed form matches the quadrature path") {
  const Body e = Body::ellipsoid(Vector3d(1.0, 4.0, 9.0).asDiagonal(), Vector3d::Zero());
  // Axis slice at 0: area of the {y,z} cross-section ellipse, pi * (1/2) * (1/3).
  CHECK(section_area(e, dir3(1, 0, 0), 0.0) == doctest::Approx(pi / 6.0).epsilon(1e-12));
  for (const auto& v : sphere_directions(3, 5, 9)) {
    const Direction xi(v);
    const Chord c = e.chord(xi);
    for (double f : {0.1, 0.45, 0.8}) {
      const double t = c.t_min + f * c.length();
      CHECK(section_area_generic(e, xi, t) ==
            doctest::Approx(section_area(e, xi, t)).epsilon(1e-8));
    }
  }
}

TEST_CASE("shifted ellipsoid slices shift with the body") {
  const Body e = Body::ellipsoid(Vector3d(1.0, 4.0, 9.0).asDiagonal(), Vector3d::Zero());
  const Vector3d d(0.2, 0.1, -0.05);
  const Body s = Body::shifted(e, d);
  const Direction xi = dir3(3, -1, 2);
  const double t0 = d.dot(xi.coords());
  for (double t : {-0.3, 0.0, 0.4})
    CHECK(section_area(s, xi, t + t0) ==
          doctest::Approx(section_area(e, xi, t)).epsilon(1e-11));
}

TEST_CASE("5d ball slices") {
  const Body b = Body::ball(5, 1.0);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(5);
  v[0] = 1.0;
  const Direction xi(v);
  const double V4 = unit_ball_volume(4);
  for (double t : {0.0, 0.3, 0.7}) {
    const double expect = V4 * std::pow(1.0 - t * t, 2.0);
    CHECK(section_area(b, xi, t) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(section_area_generic(b, xi, t) == doctest::Approx(expect).epsilon(1e-7));
  }
}

TEST_CASE("disk slices, n=2") {
  const Body b = Body::ball(2, 1.0);
  const Direction xi = Direction::normalized(Eigen::Vector2d(1, 1));
  for (double t : {0.0, 0.6})
    CHECK(section_area(b, xi, t) ==
          doctest::Approx(2.0 * std::sqrt(1.0 - t * t)).epsilon(1e-12));
}

TEST_CASE("superellipsoid slice sanity") {
  const Body q = Body::superellipsoid(3, 4);
  // Axis-aligned slice at height t is the 2-d l4 ball scaled by
  // (1 - t^4)^{1/4}; its area is (1 - t^4)^{1/2} * area of the unit l4 disk.
  const double l4_disk =
      4.0 * std::tgamma(1.25) * std::tgamma(1.25) / std::tgamma(1.5);
  const Direction ez = dir3(0, 0, 1);
  for (double t : {0.0, 0.5, 0.8}) {
    const double expect = l4_disk * std::sqrt(1.0 - std::pow(t, 4.0));
    CHECK(section_area(q, ez, t) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("profiles vanish at chord ends and interpolate the slices") {
  const Body e = Body::ellipsoid(Vector3d(1.0, 2.0, 5.0).asDiagonal(), Vector3d::Zero());
  const Direction xi = dir3(1, -1, 2);
  const SectionProfile prof = section_profile(e, xi, 33);
  CHECK(prof.values.front() == 0.0);
  CHECK(prof.values.back() == 0.0);
  const ChebInterp f = prof.interp();
  const Chord c = e.chord(xi);
  for (double frac : {0.2, 0.5, 0.77}) {
    const double t = c.t_min + frac * c.length();
    CHECK(f.eval(t) == doctest::Approx(section_area(e, xi, t)).epsilon(1e-9));
  }
}

TEST_CASE("half volume and full volume of the ball") {
  const Body b = Body::ball(3, 1.0);
  const Direction xi = dir3(0, 1, 0);
  CHECK(half_volume(b, xi, 0.0, true) == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-10));
  CHECK(half_volume(b, xi, 0.0, false) == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-10));
  // Cap above t: pi (2/3 - t + t^3/3).
  CHECK(half_volume(b, xi, 0.5, true) ==
        doctest::Approx(pi * (2.0 / 3.0 - 0.5 + 0.125 / 3.0)).epsilon(1e-10));
  const VolumeReport rep = volume(b);
  CHECK(rep.value == doctest::Approx(4.0 * pi / 3.0).epsilon(1e-10));
  CHECK(rep.consistent);
}

TEST_CASE("superellipsoid volume against the Gamma closed form") {
  // vol{sum |x_i|^p <= 1} = (2 Gamma(1 + 1/p))^n / Gamma(1 + n/p).
  const Body q = Body::superellipsoid(3, 4);
  const double expect = std::pow(2.0 * std::tgamma(1.25), 3.0) / std::tgamma(1.75);
  const VolumeReport rep = volume(q);
  CHECK(rep.value == doctest::Approx(expect).epsilon(1e-6));
  CHECK(rep.consistent);
}

TEST_CASE("non-convex bodies are outside the slicing contract") {
  const Body b = Body::custom("bumpy", 3);
  CHECK_THROWS(b.chord(dir3(0, 0, 1)));
  CHECK_THROWS(section_area_generic(b, dir3(0, 0, 1), 0.0));
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
  const Body q = Body::superellipsoid(3, 4);
  const Direction xi = dir3(2, 1, -1);
  set_parallel(false);
  const SectionProfile serial = section_profile_generic(q, xi, 33);
  set_parallel(true);
  const SectionProfile parallel = section_profile_generic(q, xi, 33);
  REQUIRE(serial.values.size() == parallel.values.size());
  for (std::size_t i = 0; i < serial.values.size(); ++i)
    CHECK(serial.values[i] == parallel.values[i]);  // exact equality intended
}
