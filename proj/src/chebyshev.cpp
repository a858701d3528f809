#include "psf/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psf {

std::vector<double> chebyshev_lobatto_nodes(double a, double b, int count) {
  if (count < 2) throw std::invalid_argument("chebyshev_lobatto_nodes: count < 2");
  const int n = count - 1;
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<double> out(count);
  for (int k = 0; k <= n; ++k)
    out[k] = mid + half * std::cos(std::numbers::pi * k / n);
  out[0] = b;
  out[n] = a;
  return out;
}

ChebInterp::ChebInterp(double a, double b, std::vector<double> vals) : a_(a), b_(b) {
  const int n = static_cast<int>(vals.size()) - 1;
  if (n < 1) throw std::invalid_argument("ChebInterp: need at least 2 values");
  // Discrete cosine transform on Lobatto points (O(n^2); profiles are small).
  coeffs_.assign(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    double s = 0.5 * (vals[0] + (j % 2 == 0 ? vals[n] : -vals[n]));
    for (int k = 1; k < n; ++k)
      s += vals[k] * std::cos(std::numbers::pi * j * k / n);
    coeffs_[j] = 2.0 * s / n;
  }
  coeffs_[0] *= 0.5;
  coeffs_[n] *= 0.5;
}

ChebInterp::ChebInterp(double a, double b, std::vector<double> coeffs, int)
    : a_(a), b_(b), coeffs_(std::move(coeffs)) {}

ChebInterp ChebInterp::chopped(double rel_eps) const {
  double cmax = 0.0;
  for (double c : coeffs_) cmax = std::max(cmax, std::abs(c));
  std::vector<double> out = coeffs_;
  for (double& c : out)
    if (std::abs(c) < rel_eps * cmax) c = 0.0;
  return ChebInterp(a_, b_, std::move(out), 0);
}

double ChebInterp::eval(double t) const {
  const double x = (2.0 * t - (a_ + b_)) / (b_ - a_);
  // Clenshaw recurrence.
  double b1 = 0.0, b2 = 0.0;
  for (int j = static_cast<int>(coeffs_.size()) - 1; j >= 1; --j) {
    const double tmp = 2.0 * x * b1 - b2 + coeffs_[j];
    b2 = b1;
    b1 = tmp;
  }
  return x * b1 - b2 + coeffs_[0];
}

ChebInterp ChebInterp::derivative_interp() const {
  const int n = static_cast<int>(coeffs_.size()) - 1;
  std::vector<double> d(std::max(n, 1), 0.0);
  // c'_{j-1} = c'_{j+1} + 2 j c_j on [-1,1], then chain rule for [a,b].
  double next = 0.0, next2 = 0.0;
  for (int j = n; j >= 1; --j) {
    const double cur = next2 + 2.0 * j * coeffs_[j];
    next2 = next;
    next = cur;
    d[j - 1] = cur;
  }
  d[0] *= 0.5;
  const double scale = 2.0 / (b_ - a_);
  for (double& c : d) c *= scale;
  return ChebInterp(a_, b_, std::move(d), 0);
}

double ChebInterp::derivative(double t, int k) const {
  if (k < 0) throw std::invalid_argument("derivative order < 0");
  ChebInterp cur = *this;
  for (int i = 0; i < k; ++i) cur = cur.derivative_interp();
  return cur.eval(t);
}

double ChebInterp::integral() const {
  // \int_{-1}^1 T_j = 0 for odd j, 2/(1-j^2) for even j.
  double s = 0.0;
  for (std::size_t j = 0; j < coeffs_.size(); j += 2)
    s += coeffs_[j] * 2.0 / (1.0 - static_cast<double>(j) * j);
  return s * 0.5 * (b_ - a_);
}

}  // namespace psf
