#include "psf/fracderiv.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "psf/quadrature.hpp"

namespace psf {

namespace {

void require_zero_interior(const SectionProfile& p) {
  if (!(p.chord.t_min < 0.0 && p.chord.t_max > 0.0))
    throw std::invalid_argument("fracderiv: chord must contain 0 strictly");
}

}  // namespace

DerivativeReport derivative_at_zero(const SectionProfile& profile, int k) {
  require_zero_interior(profile);
  if (k < 0 || k > 8) throw std::invalid_argument("derivative_at_zero: order must be in [0,8]");
  const int nodes = static_cast<int>(profile.values.size());
  if (k > nodes - 8)
    throw std::invalid_argument("derivative_at_zero: too few nodes for the requested order");

  const ChebInterp f = profile.interp().chopped();
  const double value = f.derivative(0.0, k);

  DerivativeReport rep;
  rep.order = k;
  rep.ordinary_value = value;
  rep.value = (k % 2 == 0 ? value : -value);
  rep.method = "interpolant";
  // Error estimate against the interpolant on the nested half node set
  // (Lobatto nodes of n/2 are every other node of n when n is even).
  if (nodes % 2 == 1 && (nodes - 1) / 2 >= k + 2) {
    std::vector<double> half;
    for (int i = 0; i < nodes; i += 2) half.push_back(profile.values[i]);
    const ChebInterp g =
        ChebInterp(profile.chord.t_min, profile.chord.t_max, half).chopped();
    rep.error_estimate = std::abs(value - g.derivative(0.0, k));
  }
  return rep;
}

DerivativeReport derivative_at_zero(const Body& body, const Direction& xi, int k,
                                    int node_count) {
  const Chord ch = body.chord(xi);
  if (!(ch.t_min < 0.0 && ch.t_max > 0.0))
    throw std::invalid_argument("derivative_at_zero: chord must contain 0 strictly");
  // Central subinterval: stays at distance >= 0.55 * min(|t_min|, t_max) from
  // the chord ends, where tangency singularities live.
  const double r = 0.45 * std::min(-ch.t_min, ch.t_max);
  SectionProfile local{xi, {-r, r}, chebyshev_lobatto_nodes(-r, r, node_count),
                       {}, body.dim()};
  local.values.resize(local.nodes.size());
  for (std::size_t i = 0; i < local.nodes.size(); ++i)
    local.values[i] = section_area(body, xi, local.nodes[i]);
  return derivative_at_zero(local, k);
}

DerivativeReport fractional_derivative_at_zero(const SectionProfile& profile, double q) {
  require_zero_interior(profile);
  if (!(q > -1.0)) throw std::invalid_argument("fractional derivative: q must be > -1");
  if (std::abs(q - std::round(q)) < 1e-6)
    throw std::invalid_argument(
        "fractional derivative: q is within 1e-6 of an integer; use derivative_at_zero");

  // m subtracted Taylor terms: integrand behaves like t^(m-1-q) near 0.
  const int m = std::min(static_cast<int>(std::ceil(q)) + 1, 8);
  // Extra orders cover the analytic patch below delta, where the subtracted
  // difference h - Taylor_m cancels catastrophically in floating point.
  const int jmax = std::min({m + 3, 12, static_cast<int>(profile.values.size()) - 8});
  std::vector<double> taylor(jmax + 1);  // ordinary h^(j)(0) / j!
  const ChebInterp f = profile.interp().chopped();
  double fact = 1.0;
  for (int j = 0; j <= jmax; ++j) {
    if (j > 0) fact *= j;
    taylor[j] = f.derivative(0.0, j) / fact;
  }

  const double tmax = profile.chord.t_max;
  const auto h = [&](double t) { return t <= tmax ? f.eval(t) : 0.0; };
  const auto regularized = [&](double t) {
    double taylor_sum = 0.0, tp = 1.0;
    for (int j = 0; j < m; ++j) {
      taylor_sum += taylor[j] * tp;
      tp *= t;
    }
    return std::pow(t, -1.0 - q) * (h(t) - taylor_sum);
  };

  double total = 0.0;
  const double split = std::min(1.0, tmax);
  // (0, delta]: Taylor orders m..jmax integrate in closed form; the numeric
  // integrand there is pure rounding noise amplified by t^(-1-q).
  const double delta = std::min(0.1, 0.5 * split);
  for (int j = m; j <= jmax; ++j)
    total += taylor[j] * std::pow(delta, j - q) / (j - q);
  // [delta, min(1,tmax)]: regularized integrand, smooth.
  total += integrate_adaptive(regularized, delta, split, 1e-11);
  if (tmax < 1.0) {
    // h vanishes beyond the chord; the remaining Taylor part is analytic.
    for (int j = 0; j < m; ++j)
      total -= taylor[j] * (1.0 - std::pow(tmax, j - q)) / (j - q);
  }
  if (tmax > 1.0)  // plain tail integral
    total += integrate_adaptive([&](double t) { return std::pow(t, -1.0 - q) * h(t); },
                                1.0, tmax, 1e-10);
  for (int j = 0; j < m; ++j) total += taylor[j] / (j - q);

  DerivativeReport rep;
  rep.order = q;
  rep.value = total / std::tgamma(-q);
  rep.ordinary_value = std::numeric_limits<double>::quiet_NaN();
  rep.method = "regularized-integral";
  rep.error_estimate = 1e-10 / std::abs(std::tgamma(-q));
  return rep;
}

LimitCheck fractional_limit_check(const SectionProfile& profile, int k) {
  if (k < 0 || k > 6) throw std::invalid_argument("fractional_limit_check: k must be in [0,6]");
  const double ref = derivative_at_zero(profile, k).value;
  LimitCheck out;
  for (double delta : {1e-2, 1e-3}) {
    double dev = 0.0;
    for (double q : {k + delta, k - delta}) {
      if (q <= -1.0 + 1e-9) continue;  // k=0, lower side out of the domain
      dev = std::max(dev, std::abs(fractional_derivative_at_zero(profile, q).value - ref));
    }
    (delta == 1e-2 ? out.residual_coarse : out.residual_fine) = dev;
  }
  out.max_residual = std::max(out.residual_coarse, out.residual_fine);
  return out;
}

}  // namespace psf
