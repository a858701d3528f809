#include "psf/reconstruct.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "psf/sphere.hpp"

namespace psf {

namespace {

std::vector<Eigen::VectorXd> sample_sphere(int dim, int count) {
  return sphere_directions(dim, count, dim == 3 ? 0u : 3u);
}

MultiPoly fit_on_sphere(const std::vector<Eigen::VectorXd>& pts,
                        const std::function<double(const Eigen::VectorXd&)>& f,
                        int degree, double& sup_residual) {
  std::vector<std::pair<Eigen::VectorXd, double>> samples;
  samples.reserve(pts.size());
  for (const auto& x : pts) samples.emplace_back(x, f(x));
  const FitResult fit = fit_homogeneous(samples, degree);
  double r = 0.0;
  for (const auto& [x, v] : samples) r = std::max(r, std::abs(fit.poly.eval(x) - v));
  sup_residual = r;  // absolute; Minkowski values are O(1) on the sphere
  return fit.poly;
}

}  // namespace

double RadicalExpr::eval(const Eigen::VectorXd& x) const {
  const double q = Q.eval(x);
  if (q < 0.0) throw std::runtime_error("RadicalExpr: negative radicand");
  return P.eval(x) + std::sqrt(q);
}

PQFit fit_P_Q(const Body& body, int sphere_samples) {
  if (!body.convex()) throw std::invalid_argument("fit_P_Q: body must be convex");
  const auto pts = sample_sphere(body.dim(), sphere_samples);
  PQFit out{MultiPoly(body.dim()), MultiPoly(body.dim())};
  out.P = fit_on_sphere(
      pts, [&](const Eigen::VectorXd& x) { return body.minkowski(x) - body.minkowski(-x); },
      1, out.residual_P);
  out.Q = fit_on_sphere(
      pts,
      [&](const Eigen::VectorXd& x) {
        const double a = body.minkowski(x), b = body.minkowski(-x);
        return a * a + b * b;
      },
      2, out.residual_Q);
  return out;
}

double minkowski_from_PQ(const Body& body, const MultiPoly& P, const MultiPoly& Q,
                         int sphere_samples) {
  const auto pts = sample_sphere(body.dim(), sphere_samples);
  double worst = 0.0;
  for (const auto& x : pts) {
    const double pv = P.eval(x);
    const double rad = 2.0 * Q.eval(x) - pv * pv;
    if (rad <= 0.0)
      throw std::runtime_error("minkowski_from_PQ: nonpositive radicand 2Q - P^2");
    worst = std::max(worst, std::abs(body.minkowski(x) - 0.5 * (pv + std::sqrt(rad))));
  }
  return worst;
}

QuadricFit boundary_quadric(const MultiPoly& P, const MultiPoly& Q) {
  if (P.degree() > 1) throw std::invalid_argument("boundary_quadric: P must have degree <= 1");
  if (Q.degree() > 2) throw std::invalid_argument("boundary_quadric: Q must have degree <= 2");
  const int n = P.dim();
  // (2 - P)^2 = 2Q - P^2  <=>  4 - 4P + 2P^2 - 2Q = 0, expanded exactly.
  const MultiPoly G = MultiPoly::constant(n, 4.0) - P * 4.0 + P * P * 2.0 - Q * 2.0;

  QuadricFit fit;
  fit.E = Eigen::MatrixXd::Zero(n, n);
  fit.b = Eigen::VectorXd::Zero(n);
  fit.c = 0.0;
  for (const auto& [a, coef] : G.terms()) {
    std::vector<int> idx;
    int deg = 0;
    for (int i = 0; i < n; ++i) {
      deg += a[i];
      for (int e = 0; e < a[i]; ++e) idx.push_back(i);
    }
    if (deg == 0) {
      fit.c = coef;
    } else if (deg == 1) {
      fit.b[idx[0]] = coef;
    } else if (deg == 2) {
      if (idx[0] == idx[1])
        fit.E(idx[0], idx[0]) = coef;
      else
        fit.E(idx[0], idx[1]) = fit.E(idx[1], idx[0]) = 0.5 * coef;
    } else {
      throw std::logic_error("boundary_quadric: unexpected degree");
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fit.E);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  if (emax == 0.0 || ev.cwiseAbs().minCoeff() < 1e-10 * emax) {
    fit.classification = QuadricFit::Class::Other;
    fit.diagnostics = "degenerate quadratic part (near-zero eigenvalue)";
    return fit;
  }
  // Normalize so the quadratic part is positive definite.
  double sgn = ev[0] > 0.0 ? 1.0 : -1.0;
  if ((ev.array() * sgn <= 0.0).any()) {
    fit.classification = QuadricFit::Class::Other;
    fit.diagnostics = "indefinite quadratic part (unbounded quadric)";
    return fit;
  }
  const Eigen::MatrixXd Epd = sgn * fit.E;
  const Eigen::VectorXd bpd = sgn * fit.b;
  const double cpd = sgn * fit.c;
  const Eigen::VectorXd center = -0.5 * Epd.ldlt().solve(bpd);
  const double g0 = cpd + 0.5 * bpd.dot(center);  // value at the center
  if (g0 >= 0.0) {
    fit.classification = QuadricFit::Class::Other;
    fit.diagnostics = "empty or degenerate surface (center value >= 0)";
    return fit;
  }
  fit.classification = QuadricFit::Class::Ellipsoid;
  fit.center_form = Body::EllipsoidForm{Epd / (-g0), center};
  return fit;
}

BFit product_body_B(const Body& body, int sphere_samples) {
  const auto pts = sample_sphere(body.dim(), sphere_samples);
  BFit out{MultiPoly(body.dim()), 0.0};
  out.B = fit_on_sphere(
      pts, [&](const Eigen::VectorXd& x) { return body.minkowski(x) * body.minkowski(-x); },
      2, out.residual);
  return out;
}

double odd_power_radical_check(const Body& body, int k, int sphere_samples) {
  if (k < 1 || k > 3) throw std::invalid_argument("odd_power_radical_check: k in {1,2,3}");
  const BFit bf = product_body_B(body, sphere_samples);
  if (bf.residual >= 1e-6)
    throw std::runtime_error("odd_power_radical_check: product_body_B residual " +
                             std::to_string(bf.residual) + " fails the precondition");
  const auto pts = sample_sphere(body.dim(), sphere_samples);
  const int pw = 2 * k + 1;
  double tk_res = 0.0;
  const MultiPoly T = fit_on_sphere(
      pts,
      [&](const Eigen::VectorXd& x) {
        return std::pow(body.minkowski(x), pw) - std::pow(body.minkowski(-x), pw);
      },
      pw, tk_res);
  const MultiPoly radicand = T * T + bf.B.pow(pw) * 4.0;
  double worst = 0.0;
  for (const auto& x : pts) {
    const double r = radicand.eval(x);
    if (r < 0.0) throw std::runtime_error("odd_power_radical_check: negative radicand");
    const double rhs = 0.5 * (T.eval(x) + std::sqrt(r));
    worst = std::max(worst, std::abs(std::pow(body.minkowski(x), pw) - rhs));
  }
  return worst;
}

double parallelogram_violation(const Body& body, const Eigen::VectorXd& u,
                               const Eigen::VectorXd& v) {
  const double a = body.minkowski(u + v), b = body.minkowski(u - v);
  const double nu = body.minkowski(u), nv = body.minkowski(v);
  const double denom = 2.0 * nu * nu + 2.0 * nv * nv;
  return std::abs(a * a + b * b - denom) / denom;
}

double parallelogram_test(const Body& body, int trials, unsigned seed) {
  for (const auto& x : sample_sphere(body.dim(), 64)) {
    if (std::abs(body.minkowski(x) - body.minkowski(-x)) > 1e-10)
      throw std::invalid_argument("parallelogram_test: body is not origin-symmetric");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd u(body.dim()), v(body.dim());
    for (int i = 0; i < body.dim(); ++i) {
      u[i] = gauss(rng);
      v[i] = gauss(rng);
    }
    if (u.norm() < 1e-6 || v.norm() < 1e-6 || (u - v).norm() < 1e-6 || (u + v).norm() < 1e-6)
      continue;
    worst = std::max(worst, parallelogram_violation(body, u, v));
  }
  return worst;
}

double section_ellipse_check_fn(const std::function<double(const Eigen::VectorXd&)>& norm_fn,
                                const Direction& e1, const Direction& e2) {
  if (std::abs(e1.coords().dot(e2.coords())) > 1e-12)
    throw std::invalid_argument("section_ellipse_check: plane basis is not orthonormal");
  const int npts = 64;
  Eigen::MatrixXd A(npts, 3);
  Eigen::VectorXd y(npts);
  for (int i = 0; i < npts; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / npts;
    const double cu = std::cos(phi), sv = std::sin(phi);
    const double nv = norm_fn(cu * e1.coords() + sv * e2.coords());
    A(i, 0) = cu * cu;
    A(i, 1) = cu * sv;
    A(i, 2) = sv * sv;
    y[i] = nv * nv;
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  return (A * c - y).cwiseAbs().maxCoeff() / y.cwiseAbs().maxCoeff();
}

double section_ellipse_check(const Body& body, const Direction& e1, const Direction& e2) {
  return section_ellipse_check_fn(
      [&](const Eigen::VectorXd& x) { return body.minkowski(x); }, e1, e2);
}

ReconstructionResult reconstruct_ellipsoid(const Body& body, int sphere_samples) {
  ReconstructionResult res;
  res.pq = fit_P_Q(body, sphere_samples);
  if (res.pq.max_residual() > 1e-4) {
    res.failing_stage = "fit_P_Q";
    return res;
  }
  res.identity_residual = minkowski_from_PQ(body, res.pq.P, res.pq.Q, sphere_samples);
  if (res.identity_residual > 1e-6) {
    res.failing_stage = "minkowski_from_PQ";
    return res;
  }
  res.quadric = boundary_quadric(res.pq.P, res.pq.Q);
  if (res.quadric.classification != QuadricFit::Class::Ellipsoid) {
    res.failing_stage = "boundary_quadric";
    return res;
  }
  res.is_ellipsoid = true;
  res.boundary_residual = res.identity_residual;
  if (const auto truth = body.ellipsoid_form()) {
    const auto& rec = *res.quadric.center_form;
    res.matrix_rel_error = (rec.M - truth->M).norm() / truth->M.norm();
    res.center_abs_error = (rec.center - truth->center).norm();
  }
  return res;
}

}  // namespace psf
