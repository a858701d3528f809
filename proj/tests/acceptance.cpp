// Acceptance gate: one line per criterion, non-zero exit iff any fail.
// Tolerances are pinned here on purpose; loosening one is a reviewed change.
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "psf/fracderiv.hpp"
#include "psf/integrability.hpp"
#include "psf/reconstruct.hpp"
#include "psf/runner.hpp"
#include "psf/sections.hpp"
#include "psf/spectral.hpp"
#include "psf/sphere.hpp"

using namespace psf;
using Eigen::Vector3d;
constexpr double pi = std::numbers::pi;

static int failures = 0;

static void report(int id, const char* label, bool pass, double worst) {
  std::printf("criterion %2d %-52s %s (worst %.3e)\n", id, label,
              pass ? "PASS" : "FAIL", worst);
  if (!pass) ++failures;
}

static std::vector<Direction> dirs(int n, int count, unsigned seed = 0) {
  std::vector<Direction> out;
  for (const auto& v : sphere_directions(n, count, seed)) out.emplace_back(v);
  return out;
}

int main() {
  const Body ball3 = Body::ball(3, 1.0);
  const Body ball5 = Body::ball(5, 1.0);
  const Body ell = Body::ellipsoid(Vector3d(1.0, 4.0, 9.0).asDiagonal(), Vector3d::Zero());
  const Body superell = Body::superellipsoid(3, 4);
  const Direction generic = Direction::normalized(Vector3d(1, 2, 3));

  {  // 1: closed form vs quadrature on the ball slice
    const double closed = section_area(ball3, generic, 0.5);
    const double numeric = section_area_generic(ball3, generic, 0.5);
    const double worst = std::max(std::abs(closed - 0.75 * pi),
                                  std::abs(numeric - 0.75 * pi));
    report(1, "ball slice A(0.5) = 0.75*pi, both paths", worst < 1e-9, worst);
  }

  {  // 2: volume and direction spread
    const VolumeReport rep = volume(ball3);
    double vmin = 1e300, vmax = -1e300;
    for (const auto& xi : dirs(3, 10, 2)) {
      const double v = volume_in_direction(ball3, xi);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    const double spread = (vmax - vmin) / rep.value;
    const double err = std::abs(rep.value - 4.0 * pi / 3.0);
    report(2, "ball volume 4*pi/3, 10-direction spread", err < 1e-8 && spread <= 1e-6,
           std::max(err, spread));
  }

  {  // 3: half volume
    const double err = std::abs(half_volume(ball3, generic, 0.0, true) - 2.0 * pi / 3.0);
    report(3, "half volume V+(0) = 2*pi/3", err < 1e-8, err);
  }

  const SectionProfile ball_prof = section_profile(ball3, generic, 65);
  {  // 4: integer derivatives
    const double e2 = std::abs(derivative_at_zero(ball_prof, 2).value + 2.0 * pi);
    const double e1 = std::abs(derivative_at_zero(ball_prof, 1).value);
    report(4, "ball A''(0) = -2*pi, A'(0) = 0", e2 < 1e-6 && e1 < 1e-8, std::max(e2, e1));
  }

  {  // 5: fractional-order continuity at k = 2 (relative deviation)
    const LimitCheck lim = fractional_limit_check(ball_prof, 2);
    const double rel_fine = lim.residual_fine / (2.0 * pi);
    const bool pass = rel_fine <= 1e-3 && lim.residual_fine < lim.residual_coarse;
    report(5, "fractional orders approach A''(0)", pass, rel_fine);
  }

  {  // 6: derivative identity against the transform side
    double worst = verify_even_identity(ball3, 0, generic).abs_residual;
    bool pass = worst < 1e-10;
    const double numeric = verify_even_identity(ball3, 0, generic, true).abs_residual;
    pass = pass && numeric < 1e-6;
    worst = std::max(worst, numeric);
    for (const auto& xi : dirs(3, 16, 0)) {
      const double r = verify_even_identity(ell, 0, xi).abs_residual;
      pass = pass && r < 1e-6;
      worst = std::max(worst, r);
    }
    Eigen::VectorXd v5(5);
    v5 << 1, -2, 0.5, 1, 3;
    const Direction xi5 = Direction::normalized(v5);
    for (int k : {0, 2}) {
      const double r = verify_even_identity(ball5, k, xi5).abs_residual;
      pass = pass && r < 1e-6;
      worst = std::max(worst, r);
    }
    report(6, "even-order identity: ball, ellipsoid, n=5", pass, worst);
  }

  {  // 7: Gaussian pairing oracle for the transform constant
    const double dev = gaussian_pairing_max_rel_dev(3, -2.0);
    report(7, "radial transform constant 2*pi^2 by pairing", dev < 1e-6, dev);
  }

  {  // 8: polynomial degree 2 for random ellipsoids, shift invariant
    bool pass = true;
    double worst = 0.0;
    // Deterministic "random" ellipsoids with condition <= 10.
    const double axes[][3] = {{1.0, 2.5, 7.0}, {0.8, 1.1, 4.0}, {1.0, 9.5, 3.2}};
    for (const auto& a : axes) {
      const Body e = Body::ellipsoid(Vector3d(a[0], a[1], a[2]).asDiagonal(),
                                     Vector3d::Zero());
      const Body s = Body::shifted(e, Vector3d(0.1, -0.05, 0.12));
      for (const Body* b : {&e, &s}) {
        const IntegrabilityVerdict v = integrability_report(*b, dirs(3, 64), 10, 1e-7);
        pass = pass && v.global_degree && *v.global_degree == 2;
        worst = std::max(worst, v.global_degree ? double(*v.global_degree) : -1.0);
      }
    }
    report(8, "ellipsoids: global degree 2, shift invariant", pass, worst);
  }

  {  // 9: even dimension negative control
    const Direction xi2 = Direction::normalized(Eigen::Vector2d(1, 2));
    const Body disk = Body::ball(2, 1.0);
    const DegreeScan scan = min_poly_degree(section_profile(disk, xi2, 65), 10, 1e-7);
    const double d2 = std::abs(derivative_at_zero(disk, xi2, 2).value) - 2.0;
    const bool pass = !scan.min_degree && std::abs(d2) < 1e-6;
    report(9, "disk: no polynomial fit, |A''(0)| = 2", pass, std::abs(d2));
  }

  {  // 10: non-ellipsoid negative control
    const DegreeScan scan = min_poly_degree(section_profile(superell, generic, 65), 10, 1e-7);
    double min_res = 1e300;
    for (double r : scan.residuals) min_res = std::min(min_res, r);
    report(10, "l4 ball: residual > 1e-3 at every degree <= 10", min_res > 1e-3, min_res);
  }

  {  // 11: higher derivatives vanish on ellipsoids
    const auto rep = derivative_vanishing_report(ell, {3, 4, 5, 6}, dirs(3, 64));
    double worst = 0.0;
    for (const auto& e : rep) worst = std::max(worst, e.max_abs);
    report(11, "ellipsoid: |A^(m)(0)| < 1e-5, m = 3..6, 64 dirs", worst < 1e-5, worst);
  }

  {  // 12: reconstruction
    Eigen::Matrix3d M;
    M << 1.7, 0.2, 0.0, 0.2, 0.9, -0.1, 0.0, -0.1, 2.4;
    const ReconstructionResult centered =
        reconstruct_ellipsoid(Body::ellipsoid(M, Vector3d::Zero()), 200);
    const ReconstructionResult shifted = reconstruct_ellipsoid(
        Body::shifted(Body::ellipsoid(M, Vector3d::Zero()), Vector3d(0.1, 0.05, -0.08)),
        200);
    const ReconstructionResult rejected = reconstruct_ellipsoid(superell, 200);
    const bool pass = centered.is_ellipsoid && centered.matrix_rel_error <= 1e-6 &&
                      shifted.is_ellipsoid && shifted.center_abs_error <= 1e-6 &&
                      !rejected.is_ellipsoid && rejected.failing_stage == "fit_P_Q";
    report(12, "ellipsoid recovery; l4 ball rejected at fit", pass,
           std::max(centered.matrix_rel_error, shifted.center_abs_error));
  }

  {  // 13: parallelogram equality and planar ellipse sections
    const double ell_viol = parallelogram_test(ell, 200);
    const double l4_expected = std::abs(2.0 * std::sqrt(2.0) - 4.0) / 4.0;
    const double l4_viol =
        parallelogram_violation(superell, Vector3d(1, 0, 0), Vector3d(0, 1, 0));
    const Direction e1 = Direction::normalized(Vector3d(1, 1, 0));
    const Direction e2 = Direction::normalized(Vector3d(0, 0, 1));
    const double ell_sec = section_ellipse_check(ell, e1, e2);
    const double l4_sec = section_ellipse_check(superell, e1, e2);
    const bool pass = ell_viol < 1e-9 && std::abs(l4_viol - l4_expected) < 1e-6 &&
                      ell_sec < 1e-9 && l4_sec > 1e-2;
    report(13, "parallelogram/ellipse characterization", pass,
           std::max(ell_viol, std::abs(l4_viol - l4_expected)));
  }

  {  // 14: product body and odd-power radical identities
    bool pass = true;
    double worst = 0.0;
    const Body shifted_ball = Body::shifted(Body::ball(3, 1.0), Vector3d(0.6, 0, 0));
    for (const Body* b : {&shifted_ball, &ell}) {
      const double br = product_body_B(*b).residual;
      pass = pass && br < 1e-6;
      worst = std::max(worst, br);
      for (int k : {1, 2, 3}) {
        const double r = odd_power_radical_check(*b, k);
        pass = pass && r < 1e-6;
        worst = std::max(worst, r);
      }
    }
    report(14, "radical identities for k = 1,2,3", pass, worst);
  }

  {  // 15: deterministic suite reports
    RunConfig cfg;
    cfg.directions = 8;
    cfg.nodes = 33;
    cfg.n_max = 8;
    auto strip = [](nlohmann::json j) {
      j["header"].erase("timestamp");
      return j.dump();
    };
    const std::string a = strip(run_subcommand("suite", cfg).report);
    const std::string b = strip(run_subcommand("suite", cfg).report);
    report(15, "suite reports byte-identical modulo timestamp", a == b,
           a == b ? 0.0 : 1.0);
  }

  std::printf("%d of 15 criteria passed\n", 15 - failures);
  return failures == 0 ? 0 : 1;
}
