#include "psf/sphere.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psf {

std::vector<Eigen::VectorXd> fibonacci_sphere(int count) {
  if (count < 1) throw std::invalid_argument("fibonacci_sphere: count < 1");
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = 2.0 * std::numbers::pi * std::fmod(i / golden, 1.0);
    Eigen::VectorXd v(3);
    v << r * std::cos(phi), r * std::sin(phi), z;
    out.push_back(std::move(v));
  }
  return out;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p outside (0,1)");
  // Acklam coefficients.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p > phigh) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  // One Halley step against erfc.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

namespace {
double halton(unsigned long long index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}
}  // namespace

std::vector<Eigen::VectorXd> sphere_directions(int dim, int count, unsigned seed) {
  if (dim < 2) throw std::invalid_argument("sphere_directions: dim < 2");
  if (dim == 3 && seed == 0) return fibonacci_sphere(count);
  static const unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  unsigned long long idx = 1 + static_cast<unsigned long long>(seed) * 1000003ull;
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j)
      v[j] = inverse_normal_cdf(std::min(1.0 - 1e-12, std::max(1e-12, halton(idx, primes[j]))));
    ++idx;
    const double nrm = v.norm();
    if (nrm < 1e-8) continue;
    out.push_back(v / nrm);
  }
  return out;
}

}  // namespace psf
