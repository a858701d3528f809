#include "psf/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "psf/quadrature.hpp"
#include "psf/sections.hpp"

namespace psf {

namespace {

double sphere_surface_area(int n) { return n * unit_ball_volume(n); }

void check_gamma_pole(double z) {
  if (z <= 0.5 && std::abs(z - std::round(z)) < 1e-8 && std::round(z) <= 0.0)
    throw std::domain_error("ft_radial_power_constant: Gamma argument within 1e-8 of a pole");
}

}  // namespace

double ft_radial_power_constant(int n, double p) {
  if (!(p > -n && p < 0.0))
    throw std::domain_error("ft_radial_power_constant: need -n < p < 0");
  check_gamma_pole(0.5 * (n + p));
  check_gamma_pole(-0.5 * p);
  return std::pow(2.0, n + p) * std::pow(std::numbers::pi, 0.5 * n) *
         std::tgamma(0.5 * (n + p)) / std::tgamma(-0.5 * p);
}

double gaussian_pairing_max_rel_dev(int n, double p, const std::vector<double>& scales) {
  const double c = ft_radial_power_constant(n, p);
  const double omega = sphere_surface_area(n);
  double worst = 0.0;
  for (double s : scales) {
    // <|x|^p, g_s^> with g_s^(x) = (pi/s)^{n/2} exp(-|x|^2/(4s)).
    const double r1 = std::sqrt(4.0 * s * 60.0);
    const double lhs = omega * std::pow(std::numbers::pi / s, 0.5 * n) *
                       integrate_adaptive(
                           [&](double r) {
                             return std::pow(r, n - 1 + p) * std::exp(-r * r / (4.0 * s));
                           },
                           0.0, r1, 1e-12);
    // <c |xi|^{-n-p}, g_s>.
    const double r2 = std::sqrt(60.0 / s);
    const double rhs = c * omega *
                       integrate_adaptive(
                           [&](double r) {
                             return std::pow(r, -1.0 - p) * std::exp(-s * r * r);
                           },
                           0.0, r2, 1e-12);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return worst;
}

double ellipsoid_ft_reduction_rel_dev(const Eigen::MatrixXd& M, double p, double scale) {
  const int n = static_cast<int>(M.rows());
  if (n != 3) throw std::invalid_argument("ellipsoid_ft_reduction_rel_dev: n == 3 only");
  const double c = ft_radial_power_constant(n, p);
  const double detM = M.determinant();
  const Eigen::MatrixXd Minv = M.inverse();

  // The Gaussians are radial, so both pairings factor into an angular
  // integral over S^2 and a 1-D radial integral.
  static const GaussRule gl = gauss_legendre(64);
  const int nphi = 128;
  double ang_lhs = 0.0, ang_rhs = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double ct = gl.nodes[i], st = std::sqrt(1.0 - ct * ct);
    for (int k = 0; k < nphi; ++k) {
      const double ph = 2.0 * std::numbers::pi * (k + 0.5) / nphi;
      Eigen::Vector3d w(st * std::cos(ph), st * std::sin(ph), ct);
      const double wgt = gl.weights[i] * 2.0 * std::numbers::pi / nphi;
      ang_lhs += wgt * std::pow(w.dot(M * w), 0.5 * p);
      ang_rhs += wgt * std::pow(w.dot(Minv * w), 0.5 * (-n - p));
    }
  }

  const double s = scale;
  const double rad_lhs = std::pow(std::numbers::pi / s, 0.5 * n) *
                         integrate_adaptive(
                             [&](double r) {
                               return std::pow(r, n - 1 + p) * std::exp(-r * r / (4.0 * s));
                             },
                             0.0, std::sqrt(4.0 * s * 60.0), 1e-12);
  const double rad_rhs = integrate_adaptive(
      [&](double r) { return std::pow(r, -1.0 - p) * std::exp(-s * r * r); }, 0.0,
      std::sqrt(60.0 / s), 1e-12);

  const double lhs = ang_lhs * rad_lhs;
  const double rhs = std::pow(detM, -0.5) * c * ang_rhs * rad_rhs;
  return std::abs(lhs - rhs) / std::abs(rhs);
}

namespace {

double even_identity_rhs(const Body& body, int k, const Direction& xi) {
  const int n = body.dim();
  const double p = -n + 1 + k;
  const auto ef = body.ellipsoid_form();
  if (!ef || !ef->center.isZero(0.0))
    throw std::invalid_argument("verify_even_identity: ball or centered ellipsoid only");
  const double c = ft_radial_power_constant(n, p);
  const double quad = xi.coords().dot(ef->M.ldlt().solve(xi.coords()));
  const double ft = std::pow(ef->M.determinant(), -0.5) * c * std::pow(quad, 0.5 * (-n - p));
  const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
  // Symmetric body: the two Fourier terms coincide.
  return sign / (2.0 * std::numbers::pi * (n - k - 1)) * 2.0 * ft;
}

}  // namespace

IdentityCheck verify_even_identity(const Body& body, int k, const Direction& xi,
                                   bool numeric_lhs) {
  const int n = body.dim();
  if (k % 2 != 0 || k < 0) throw std::invalid_argument("verify_even_identity: k must be even");
  if (k == n - 1) throw std::invalid_argument("verify_even_identity: order k = n-1 is excluded");
  if (!(k < n - 1))
    throw std::invalid_argument("verify_even_identity: closed-form path needs k < n-1");

  const SectionProfile prof =
      numeric_lhs ? section_profile_generic(body, xi) : section_profile(body, xi);
  const double lhs = derivative_at_zero(prof, k).value;
  const double rhs = even_identity_rhs(body, k, xi);

  IdentityCheck chk;
  chk.body = body.describe();
  chk.k = k;
  chk.xi = xi.coords();
  chk.lhs = lhs;
  chk.rhs = rhs;
  chk.abs_residual = std::abs(lhs - rhs);
  return chk;
}

IdentityCheck verify_odd_identity_symmetric(const Body& body, int k, const Direction& xi) {
  if (k % 2 != 1 || k < 1) throw std::invalid_argument("verify_odd_identity: k must be odd");
  if (!body.origin_symmetric())
    throw std::invalid_argument("verify_odd_identity: body must be origin-symmetric");
  const SectionProfile prof = section_profile(body, xi);
  const double lhs = derivative_at_zero(prof, k).value;

  IdentityCheck chk;
  chk.body = body.describe();
  chk.k = k;
  chk.xi = xi.coords();
  chk.lhs = lhs;
  chk.rhs = 0.0;  // the difference of the two Fourier terms vanishes identically
  chk.abs_residual = std::abs(lhs);
  chk.consistency_only = true;
  return chk;
}

}  // namespace psf
