#include "psf/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "psf/sphere.hpp"

namespace psf {

bool GradedLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly::MultiPoly(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("MultiPoly: dim < 1");
}

MultiPoly MultiPoly::monomial(int dim, MultiIndex alpha, double coeff) {
  MultiPoly p(dim);
  p.set_coeff(alpha, coeff);
  return p;
}

MultiPoly MultiPoly::constant(int dim, double value) {
  return monomial(dim, MultiIndex(dim, 0), value);
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_)
    d = std::max(d, std::accumulate(a.begin(), a.end(), 0));
  return d;
}

bool MultiPoly::is_homogeneous() const {
  int d = -1;
  for (const auto& [a, c] : terms_) {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    if (d == -1) d = da;
    if (da != d) return false;
  }
  return true;
}

bool MultiPoly::is_zero(double tol) const {
  for (const auto& [a, c] : terms_)
    if (std::abs(c) > tol) return false;
  return true;
}

double MultiPoly::coeff(const MultiIndex& alpha) const {
  const auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

void MultiPoly::set_coeff(const MultiIndex& alpha, double c) {
  if (static_cast<int>(alpha.size()) != dim_)
    throw std::invalid_argument("MultiPoly: multi-index dimension mismatch");
  if (!std::isfinite(c)) throw std::runtime_error("MultiPoly: non-finite coefficient");
  if (c == 0.0)
    terms_.erase(alpha);
  else
    terms_[alpha] = c;
}

double MultiPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [a, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double MultiPoly::eval(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("MultiPoly::eval: dimension mismatch");
  const int d = degree();
  if (d < 0) return 0.0;
  // Power table per coordinate keeps the evaluation stable and cheap.
  Eigen::MatrixXd pw(dim_, d + 1);
  for (int i = 0; i < dim_; ++i) {
    pw(i, 0) = 1.0;
    for (int k = 1; k <= d; ++k) pw(i, k) = pw(i, k - 1) * x[i];
  }
  double s = 0.0;
  for (const auto& [a, c] : terms_) {
    double t = c;
    for (int i = 0; i < dim_; ++i) t *= pw(i, a[i]);
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("MultiPoly: dimension mismatch");
  MultiPoly r = *this;
  for (const auto& [a, c] : o.terms_) r.set_coeff(a, r.coeff(a) + c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + o * -1.0; }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (dim_ != o.dim_) throw std::invalid_argument("MultiPoly: dimension mismatch");
  MultiPoly r(dim_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      MultiIndex s(dim_);
      for (int i = 0; i < dim_; ++i) s[i] = a[i] + b[i];
      r.set_coeff(s, r.coeff(s) + ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::operator*(double s) const {
  MultiPoly r(dim_);
  for (const auto& [a, c] : terms_) r.set_coeff(a, c * s);
  return r;
}

MultiPoly MultiPoly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
  MultiPoly r = constant(dim_, 1.0);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = base * base;
    k >>= 1;
  }
  return r;
}

MultiPoly MultiPoly::restrict_to_plane(const Direction& e1, const Direction& e2) const {
  if (e1.dim() != dim_ || e2.dim() != dim_)
    throw std::invalid_argument("restrict_to_plane: dimension mismatch");
  if (std::abs(e1.coords().dot(e2.coords())) > 1e-12)
    throw std::invalid_argument("restrict_to_plane: plane basis is not orthonormal");
  MultiPoly out(2);
  for (const auto& [a, c] : terms_) {
    // Expand prod_i (u a_i + v b_i)^{alpha_i} by repeated binomial products.
    MultiPoly factor = MultiPoly::constant(2, c);
    for (int i = 0; i < dim_; ++i) {
      if (a[i] == 0) continue;
      MultiPoly lin(2);
      lin.set_coeff({1, 0}, e1[i]);
      lin.set_coeff({0, 1}, e2[i]);
      factor = factor * lin.pow(a[i]);
    }
    out = out + factor;
  }
  return out;
}

nlohmann::json MultiPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [a, c] : terms_) terms.push_back({{"alpha", a}, {"c", c}});
  return {{"dim", dim_}, {"terms", terms}};
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
  MultiPoly p(j.at("dim").get<int>());
  for (const auto& t : j.at("terms"))
    p.set_coeff(t.at("alpha").get<MultiIndex>(), t.at("c").get<double>());
  return p;
}

namespace {
void enumerate_rec(int dim, int remaining, MultiIndex& cur, int pos,
                   std::vector<MultiIndex>& out) {
  if (pos == dim - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[pos] = k;
    enumerate_rec(dim, remaining - k, cur, pos + 1, out);
  }
}
}  // namespace

std::vector<MultiIndex> homogeneous_basis(int dim, int degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim, 0);
  enumerate_rec(dim, degree, cur, 0, out);
  return out;
}

FitResult fit_homogeneous(const std::vector<std::pair<Eigen::VectorXd, double>>& samples,
                          int degree) {
  if (samples.empty()) throw std::invalid_argument("fit_homogeneous: no samples");
  const int dim = static_cast<int>(samples[0].first.size());
  const auto basis = homogeneous_basis(dim, degree);
  const int m = static_cast<int>(samples.size());
  const int k = static_cast<int>(basis.size());
  if (m < 2 * k)
    throw std::invalid_argument("fit_homogeneous: need at least 2x as many samples as basis terms");

  Eigen::MatrixXd A(m, k);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    const auto& x = samples[i].first;
    for (int j = 0; j < k; ++j) {
      double t = 1.0;
      for (int d = 0; d < dim; ++d)
        for (int e = 0; e < basis[j][d]; ++e) t *= x[d];
      A(i, j) = t;
    }
    y[i] = samples[i].second;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  const auto& R = qr.matrixR();
  const double rmax = std::abs(R(0, 0));
  const double rmin = std::abs(R(k - 1, k - 1));
  if (rmin < 1e-12 * rmax)
    throw std::runtime_error("fit_homogeneous: rank-deficient sample set, condition estimate " +
                             std::to_string(rmax / std::max(rmin, 1e-300)));
  const Eigen::VectorXd c = qr.solve(y);

  FitResult res{MultiPoly(dim), 0.0};
  for (int j = 0; j < k; ++j) res.poly.set_coeff(basis[j], c[j]);
  const Eigen::VectorXd r = A * c - y;
  const double ymax = y.cwiseAbs().maxCoeff();
  res.residual = r.cwiseAbs().maxCoeff() / (ymax > 0.0 ? ymax : 1.0);
  return res;
}

std::vector<RootCluster> roots_univariate(const std::vector<double>& coeffs,
                                          double cluster_radius) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw std::domain_error("roots_univariate: zero polynomial");
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg == 0) return {};

  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<std::complex<double>> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()[i];
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  std::vector<RootCluster> out;
  std::vector<bool> used(deg, false);
  for (int i = 0; i < deg; ++i) {
    if (used[i]) continue;
    std::complex<double> sum = 0.0;
    int count = 0;
    for (int j = i; j < deg; ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= cluster_radius) {
        used[j] = true;
        sum += roots[j];
        ++count;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

double perfect_square_residual(const MultiPoly& q) {
  const int deg = q.degree();
  if (deg < 0) return 0.0;  // zero polynomial is 0^2
  if (!q.is_homogeneous() || deg % 2 != 0) return 1.0;
  const int dim = q.dim();
  const int m = deg / 2;
  const double qscale = q.max_abs_coeff();
  if (qscale == 0.0) return 0.0;

  const auto rel_residual = [&](const MultiPoly& s) {
    return (s * s - q).max_abs_coeff() / qscale;
  };

  // Seed: least-squares fit of sqrt(max(q,0)) on sphere samples.
  const auto sbasis = homogeneous_basis(dim, m);
  const auto pts = sphere_directions(dim, 4 * static_cast<int>(sbasis.size()) + 32,
                                     dim == 3 ? 0u : 2u);
  std::vector<std::pair<Eigen::VectorXd, double>> samples;
  samples.reserve(pts.size());
  for (const auto& x : pts)
    samples.emplace_back(x, std::sqrt(std::max(0.0, q.eval(x))));
  MultiPoly s = fit_homogeneous(samples, m).poly;

  // Gauss-Newton on the coefficient-matching residual F(s) = coeffs(s^2 - q).
  const auto qbasis = homogeneous_basis(dim, deg);
  const int nk = static_cast<int>(sbasis.size());
  const int nq = static_cast<int>(qbasis.size());
  double best = rel_residual(s);
  for (int it = 0; it < 60 && best > 1e-14; ++it) {
    Eigen::MatrixXd J(nq, nk);
    for (int j = 0; j < nk; ++j) {
      const MultiPoly dj = MultiPoly::monomial(dim, sbasis[j], 1.0) * s * 2.0;
      for (int i = 0; i < nq; ++i) J(i, j) = dj.coeff(qbasis[i]);
    }
    const MultiPoly diff = s * s - q;
    Eigen::VectorXd F(nq);
    for (int i = 0; i < nq; ++i) F(i) = diff.coeff(qbasis[i]);
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(-F);
    MultiPoly snew = s;
    for (int j = 0; j < nk; ++j)
      snew.set_coeff(sbasis[j], snew.coeff(sbasis[j]) + step[j]);
    const double r = rel_residual(snew);
    if (r >= best) break;
    s = snew;
    best = r;
  }
  return best;
}

}  // namespace psf
