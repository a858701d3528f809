#include "psf/sections.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "psf/parallel.hpp"
#include "psf/quadrature.hpp"
#include "psf/sphere.hpp"

namespace psf {

double unit_ball_volume(int k) {
  if (k < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
  return std::pow(std::numbers::pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

namespace {

// Interior point of the section K cap {(x,xi)=t}, as hyperplane coordinates u
// with x = t*xi + F*u. Damped Newton on the (convex, smooth) Minkowski
// functional with finite-difference derivatives. Returns the minimum value.
double section_center(const Body& body, const Eigen::VectorXd& base,
                      const Eigen::MatrixXd& frame, Eigen::VectorXd& u) {
  const int m = static_cast<int>(frame.cols());
  const auto f = [&](const Eigen::VectorXd& uu) {
    return body.minkowski(base + frame * uu);
  };
  u.setZero(m);
  double fu = f(u);
  if (fu < 0.9) return fu;  // already comfortably interior
  const double h = 1e-6;
  double damping = 0.0;
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd g(m);
    Eigen::MatrixXd H(m, m);
    for (int i = 0; i < m; ++i) {
      Eigen::VectorXd up = u, um = u;
      up[i] += h;
      um[i] -= h;
      const double fp = f(up), fm = f(um);
      g[i] = (fp - fm) / (2 * h);
      H(i, i) = (fp - 2 * fu + fm) / (h * h);
      for (int j = i + 1; j < m; ++j) {
        Eigen::VectorXd upp = u, upm = u, ump = u, umm = u;
        upp[i] += h; upp[j] += h;
        upm[i] += h; upm[j] -= h;
        ump[i] -= h; ump[j] += h;
        umm[i] -= h; umm[j] -= h;
        H(i, j) = H(j, i) = (f(upp) - f(upm) - f(ump) + f(umm)) / (4 * h * h);
      }
    }
    if (g.norm() < 1e-11) break;
    Eigen::VectorXd step;
    for (;;) {
      Eigen::MatrixXd Hd = H + damping * Eigen::MatrixXd::Identity(m, m);
      Eigen::LLT<Eigen::MatrixXd> llt(Hd);
      if (llt.info() == Eigen::Success) {
        step = llt.solve(-g);
        break;
      }
      damping = std::max(1e-8, damping * 10.0);
    }
    double fnew = f(u + step);
    int backtracks = 0;
    while (fnew > fu && backtracks++ < 40) {
      step *= 0.5;
      fnew = f(u + step);
    }
    if (fnew >= fu && step.norm() < 1e-13) break;
    u += step;
    fu = fnew;
    damping *= 0.25;
    if (step.norm() < 1e-12) break;
  }
  return fu;
}

// Distance from z along unit direction d to the boundary ||.||_K = 1.
double boundary_distance(const Body& body, const Eigen::VectorXd& z,
                         const Eigen::VectorXd& d) {
  const auto g = [&](double r) { return body.minkowski(z + r * d) - 1.0; };
  double hi = 1.0;
  int guard = 0;
  while (g(hi) < 0.0) {
    hi *= 2.0;
    if (++guard > 80) throw std::runtime_error("section quadrature: bracketing failed");
  }
  double lo = 0.0;
  for (int it = 0; it < 90 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double generic_section_area(const Body& body, const Direction& xi, double t) {
  const int n = body.dim();
  if (n != 2 && n != 3 && n != 5)
    throw std::runtime_error("section_area: generic quadrature supports n in {2,3,5}");
  if (!body.convex())
    throw std::runtime_error("section_area: generic quadrature needs a convex body");

  const Eigen::MatrixXd frame = orthonormal_frame(xi);
  const Eigen::VectorXd base = t * xi.coords();
  Eigen::VectorXd u;
  const double fmin = section_center(body, base, frame, u);
  if (fmin >= 1.0 - 1e-12) return 0.0;
  const Eigen::VectorXd z = base + frame * u;

  if (n == 2) {
    const Eigen::VectorXd d = frame.col(0);
    return boundary_distance(body, z, d) + boundary_distance(body, z, -d);
  }

  if (n == 3) {
    // A = (1/2) * integral over S^1 of rho^2; periodic trapezoid rule.
    const int nth = 256;
    std::vector<double> vals(nth);
    detail::parallel_for(nth, [&](std::ptrdiff_t j) {
      const double th = 2.0 * std::numbers::pi * (j + 0.5) / nth;
      const Eigen::VectorXd d = std::cos(th) * frame.col(0) + std::sin(th) * frame.col(1);
      const double rho = boundary_distance(body, z, d);
      vals[j] = rho * rho;
    });
    double s = 0.0;
    for (double v : vals) s += v;
    return 0.5 * s * 2.0 * std::numbers::pi / nth;
  }

  // n == 5: A = (1/4) * integral over S^3 of rho^4, product rule in the
  // angles (GL x GL x trapezoid) with the sin^2 * sin surface measure.
  static const GaussRule gl = gauss_legendre(32);
  const int nphi = 64;
  const int total = 32 * 32 * nphi;
  std::vector<double> vals(total);
  detail::parallel_for(total, [&](std::ptrdiff_t idx) {
    const int i = static_cast<int>(idx) / (32 * nphi);
    const int j = (static_cast<int>(idx) / nphi) % 32;
    const int k = static_cast<int>(idx) % nphi;
    const double a1 = 0.5 * std::numbers::pi * (gl.nodes[i] + 1.0);
    const double a2 = 0.5 * std::numbers::pi * (gl.nodes[j] + 1.0);
    const double a3 = 2.0 * std::numbers::pi * (k + 0.5) / nphi;
    const double s1 = std::sin(a1), s2 = std::sin(a2);
    Eigen::VectorXd w(4);
    w << std::cos(a1), s1 * std::cos(a2), s1 * s2 * std::cos(a3), s1 * s2 * std::sin(a3);
    const Eigen::VectorXd d = frame * w;
    const double rho = boundary_distance(body, z, d);
    const double weight = gl.weights[i] * gl.weights[j] * s1 * s1 * s2;
    vals[idx] = weight * rho * rho * rho * rho;
  });
  double s = 0.0;
  for (double v : vals) s += v;
  const double scale = (0.5 * std::numbers::pi) * (0.5 * std::numbers::pi) *
                       (2.0 * std::numbers::pi / nphi);
  return 0.25 * s * scale;
}

}  // namespace

namespace {

// Chord clipping shared by both area paths. Returns true when the area is
// forced to zero (outside, or within the ill-posed tangency margin).
bool clip_to_chord(const Body& body, const Direction& xi, double t, bool strict) {
  if (!body.convex()) return false;
  const Chord ch = body.chord(xi);
  const double slack = 1e-9 * ch.length();
  if (t < ch.t_min - slack || t > ch.t_max + slack) {
    if (strict) throw std::out_of_range("section_area: t outside the chord");
    return true;
  }
  // Tangent-plane root bracketing is ill-posed; snap to zero at the ends.
  return t - ch.t_min < 1e-8 * ch.length() || ch.t_max - t < 1e-8 * ch.length();
}

}  // namespace

double section_area_generic(const Body& body, const Direction& xi, double t) {
  if (clip_to_chord(body, xi, t, false)) return 0.0;
  return generic_section_area(body, xi, t);
}

double section_area(const Body& body, const Direction& xi, double t, bool strict) {
  if (clip_to_chord(body, xi, t, strict)) return 0.0;

  if (const auto ef = body.ellipsoid_form()) {
    const int n = body.dim();
    const double h = std::sqrt(xi.coords().dot(ef->M.ldlt().solve(xi.coords())));
    const double t0 = ef->center.dot(xi.coords());
    const double arg = h * h - (t - t0) * (t - t0);
    if (arg <= 0.0) return 0.0;
    const double det = ef->M.determinant();
    return unit_ball_volume(n - 1) / std::sqrt(det) *
           std::pow(arg, 0.5 * (n - 1)) / std::pow(h, n);
  }
  return generic_section_area(body, xi, t);
}

ChebInterp SectionProfile::interp() const {
  return ChebInterp(chord.t_min, chord.t_max, values);
}

namespace {
SectionProfile make_profile(const Body& body, const Direction& xi, int node_count,
                            bool force_generic) {
  if (node_count < 16) throw std::invalid_argument("section_profile: node_count < 16");
  const Chord ch = body.chord(xi);
  SectionProfile prof{xi, ch, chebyshev_lobatto_nodes(ch.t_min, ch.t_max, node_count),
                      std::vector<double>(node_count), body.dim()};
  const bool closed_form = !force_generic && body.ellipsoid_form().has_value();
  const auto compute = [&](std::ptrdiff_t i) {
    prof.values[i] = force_generic ? section_area_generic(body, xi, prof.nodes[i])
                                   : section_area(body, xi, prof.nodes[i]);
  };
  if (closed_form) {
    for (int i = 0; i < node_count; ++i) compute(i);
  } else {
    detail::parallel_for(node_count, compute);
  }
  return prof;
}
}  // namespace

SectionProfile section_profile(const Body& body, const Direction& xi, int node_count) {
  return make_profile(body, xi, node_count, false);
}

SectionProfile section_profile_generic(const Body& body, const Direction& xi,
                                       int node_count) {
  return make_profile(body, xi, node_count, true);
}

double half_volume(const Body& body, const Direction& xi, double t, bool positive_side) {
  const Chord ch = body.chord(xi);
  const double lo = positive_side ? std::clamp(t, ch.t_min, ch.t_max) : ch.t_min;
  const double hi = positive_side ? ch.t_max : std::clamp(t, ch.t_min, ch.t_max);
  if (body.ellipsoid_form()) {
    return integrate_adaptive([&](double z) { return section_area(body, xi, z); },
                              lo, hi, 1e-10);
  }
  const ChebInterp f = section_profile(body, xi).interp();
  return integrate_adaptive([&](double z) { return std::max(0.0, f.eval(z)); },
                            lo, hi, 1e-10);
}

double volume_in_direction(const Body& body, const Direction& xi) {
  return half_volume(body, xi, body.chord(xi).t_min, true);
}

VolumeReport volume(const Body& body) {
  const auto dirs = sphere_directions(body.dim(), 8);
  double vmin = 1e300, vmax = -1e300, sum = 0.0;
  for (const auto& d : dirs) {
    const double v = volume_in_direction(body, Direction(d));
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    sum += v;
  }
  VolumeReport rep;
  rep.value = sum / static_cast<double>(dirs.size());
  rep.relative_spread = (vmax - vmin) / rep.value;
  rep.consistent = rep.relative_spread <= 1e-6;
  return rep;
}

}  // namespace psf
