#include "psf/integrability.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "psf/parallel.hpp"

namespace psf {

namespace {

// Monomial coefficients (in t) of the Chebyshev combination sum c_j T_j(x)
// with x = (2t - (a+b)) / (b-a).
std::vector<double> cheb_to_monomial(const std::vector<double>& c, double a, double b) {
  const int n = static_cast<int>(c.size());
  // T_j in monomial coefficients of x.
  std::vector<std::vector<double>> T(n);
  if (n > 0) T[0] = {1.0};
  if (n > 1) T[1] = {0.0, 1.0};
  for (int j = 2; j < n; ++j) {
    T[j].assign(j + 1, 0.0);
    for (int i = 0; i <= j - 1; ++i) T[j][i + 1] += 2.0 * T[j - 1][i];
    for (int i = 0; i <= j - 2; ++i) T[j][i] -= T[j - 2][i];
  }
  std::vector<double> px(n, 0.0);  // polynomial in x
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) px[i] += c[j] * T[j][i];
  // Substitute x = alpha t + beta.
  const double alpha = 2.0 / (b - a), beta = -(a + b) / (b - a);
  std::vector<double> pt(n, 0.0);
  std::vector<double> lin_pow = {1.0};  // (alpha t + beta)^i
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < lin_pow.size(); ++k) pt[k] += px[i] * lin_pow[k];
    // multiply lin_pow by (alpha t + beta)
    std::vector<double> next(lin_pow.size() + 1, 0.0);
    for (std::size_t k = 0; k < lin_pow.size(); ++k) {
      next[k] += beta * lin_pow[k];
      next[k + 1] += alpha * lin_pow[k];
    }
    lin_pow = std::move(next);
  }
  return pt;
}

}  // namespace

DegreeScan min_poly_degree(const SectionProfile& profile, int N_max, double tol) {
  const int m = static_cast<int>(profile.values.size());
  if (N_max >= m - 2)
    throw std::invalid_argument("min_poly_degree: N_max must be < node count - 2");
  const double a = profile.chord.t_min, b = profile.chord.t_max;
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) y[i] = profile.values[i];
  const double ymax = std::max(y.cwiseAbs().maxCoeff(), 1e-300);

  // Chebyshev Vandermonde at the profile nodes.
  Eigen::MatrixXd V(m, N_max + 1);
  for (int i = 0; i < m; ++i) {
    const double x = (2.0 * profile.nodes[i] - (a + b)) / (b - a);
    V(i, 0) = 1.0;
    if (N_max >= 1) V(i, 1) = x;
    for (int j = 2; j <= N_max; ++j) V(i, j) = 2.0 * x * V(i, j - 1) - V(i, j - 2);
  }

  DegreeScan scan;
  scan.residuals.resize(N_max + 1);
  double running = 1e300;
  for (int d = 0; d <= N_max; ++d) {
    const auto Vd = V.leftCols(d + 1);
    const Eigen::VectorXd c = Vd.colPivHouseholderQr().solve(y);
    const double res = (Vd * c - y).cwiseAbs().maxCoeff() / ymax;
    running = std::min(running, res);
    scan.residuals[d] = running;
    if (!scan.min_degree && res <= tol) {
      scan.min_degree = d;
      scan.monomial_coeffs =
          cheb_to_monomial(std::vector<double>(c.data(), c.data() + d + 1), a, b);
    }
  }
  return scan;
}

IntegrabilityVerdict integrability_report(const Body& body,
                                          const std::vector<Direction>& directions,
                                          int N_max, double tol, int node_count) {
  if (directions.size() < 8)
    throw std::invalid_argument("integrability_report: need at least 8 directions");
  IntegrabilityVerdict verdict;
  verdict.N_max = N_max;
  verdict.tol = tol;
  verdict.per_direction.resize(directions.size());

  detail::parallel_for(static_cast<std::ptrdiff_t>(directions.size()), [&](std::ptrdiff_t i) {
    const SectionProfile prof = section_profile(body, directions[i], node_count);
    verdict.per_direction[i] = DirectionVerdict{directions[i].coords(),
                                                min_poly_degree(prof, N_max, tol)};
  });

  int global = -1;
  bool all = true;
  for (const auto& dv : verdict.per_direction) {
    if (!dv.scan.min_degree) {
      all = false;
      break;
    }
    global = std::max(global, *dv.scan.min_degree);
  }
  if (all) verdict.global_degree = global;
  return verdict;
}

std::vector<CoefficientField> coefficient_fields(const IntegrabilityVerdict& verdict) {
  if (!verdict.global_degree) return {};
  std::vector<CoefficientField> fields(*verdict.global_degree + 1);
  for (int k = 0; k <= *verdict.global_degree; ++k) fields[k].k = k;
  for (const auto& dv : verdict.per_direction) {
    for (int k = 0; k <= *verdict.global_degree; ++k) {
      const auto& mc = dv.scan.monomial_coeffs;
      const double ak = k < static_cast<int>(mc.size()) ? mc[k] : 0.0;
      fields[k].samples.emplace_back(dv.xi, ak);
    }
  }
  return fields;
}

std::vector<VanishingEntry> derivative_vanishing_report(
    const Body& body, const std::vector<int>& orders,
    const std::vector<Direction>& directions) {
  for (int m : orders)
    if (m < 0 || m > 6)
      throw std::invalid_argument("derivative_vanishing_report: orders must be in [0,6]");
  std::vector<std::vector<double>> per_dir(directions.size());
  detail::parallel_for(static_cast<std::ptrdiff_t>(directions.size()), [&](std::ptrdiff_t i) {
    const SectionProfile prof = section_profile(body, directions[i]);
    per_dir[i].reserve(orders.size());
    for (int m : orders)
      per_dir[i].push_back(std::abs(derivative_at_zero(prof, m).value));
  });
  std::vector<VanishingEntry> out;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    VanishingEntry e{orders[j], 0.0};
    for (const auto& row : per_dir) e.max_abs = std::max(e.max_abs, row[j]);
    out.push_back(e);
  }
  return out;
}

}  // namespace psf
