#include "psf/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "psf/sphere.hpp"

namespace psf {

Direction::Direction(Eigen::VectorXd coords) : v_(std::move(coords)) {
  if (v_.size() < 2) throw std::invalid_argument("Direction: dimension must be >= 2");
  if (std::abs(v_.norm() - 1.0) > 1e-14)
    throw std::invalid_argument("Direction: coordinates are not unit-norm");
}

Direction Direction::normalized(const Eigen::VectorXd& v) {
  const double n = v.norm();
  if (n == 0.0) throw std::invalid_argument("Direction: zero vector");
  return Direction(v / n);
}

Direction Direction::operator-() const { return Direction(-v_); }

struct Body::Impl {
  Kind kind;
  int dim = 0;
  double radius = 0.0;                    // Ball
  Eigen::MatrixXd M;                      // Ellipsoid
  Eigen::VectorXd center;                 // Ellipsoid
  int p = 0;                              // Superellipsoid
  std::shared_ptr<const Impl> inner;      // Shifted
  Eigen::VectorXd offset;                 // Shifted
  std::string custom_id;                  // Custom
};

namespace {

double mink_impl(const Body::Impl& b, const Eigen::VectorXd& x);

double bumpy_rho(const Eigen::VectorXd& u) {
  // Non-convex star body: wavy radial perturbation of the sphere.
  return 1.0 + 0.35 * std::sin(3.0 * u[2]) * u[0];
}

// Shifted body: the unique a>0 with x/a in inner+offset, by bracketing
// bisection and a secant polish on g(a) = ||x/a - offset||_inner - 1.
double shifted_mink(const Body::Impl& b, const Eigen::VectorXd& x) {
  const auto g = [&](double a) { return mink_impl(*b.inner, x / a - b.offset) - 1.0; };
  double hi = std::max(1.0, x.norm());
  while (g(hi) > 0.0) hi *= 2.0;
  double lo = hi;
  while (g(lo) < 0.0) lo *= 0.5;
  // g(lo) >= 0 >= g(hi), lo <= hi after the doubling phases.
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double mink_impl(const Body::Impl& b, const Eigen::VectorXd& x) {
  switch (b.kind) {
    case Body::Kind::Ball:
      return x.norm() / b.radius;
    case Body::Kind::Ellipsoid: {
      if (b.center.isZero(0.0)) return std::sqrt(x.dot(b.M * x));
      const double A = x.dot(b.M * x);
      const double B = x.dot(b.M * b.center);
      const double C = b.center.dot(b.M * b.center) - 1.0;
      return A / (B + std::sqrt(B * B - A * C));
    }
    case Body::Kind::Superellipsoid: {
      double s = 0.0;
      for (int i = 0; i < b.dim; ++i) s += std::pow(std::abs(x[i]), b.p);
      return std::pow(s, 1.0 / b.p);
    }
    case Body::Kind::Shifted:
      return shifted_mink(b, x);
    case Body::Kind::Custom: {
      const double r = x.norm();
      return r / bumpy_rho(x / r);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Body Body::ball(int dim, double radius) {
  if (dim < 2) throw std::invalid_argument("ball: dim must be >= 2");
  if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Ball;
  impl->dim = dim;
  impl->radius = radius;
  return Body(std::move(impl));
}

Body Body::ellipsoid(Eigen::MatrixXd matrix, Eigen::VectorXd center) {
  const int n = static_cast<int>(matrix.rows());
  if (n < 2 || matrix.cols() != n) throw std::invalid_argument("ellipsoid: matrix must be square, n >= 2");
  if (center.size() == 0) center = Eigen::VectorXd::Zero(n);
  if (center.size() != n) throw std::invalid_argument("ellipsoid: center dimension mismatch");
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * matrix.cwiseAbs().maxCoeff())
    throw std::invalid_argument("ellipsoid: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("ellipsoid: matrix is not positive definite");
  if (center.dot(matrix * center) >= 1.0)
    throw std::invalid_argument("ellipsoid: origin is not interior");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Ellipsoid;
  impl->dim = n;
  impl->M = 0.5 * (matrix + matrix.transpose());
  impl->center = std::move(center);
  return Body(std::move(impl));
}

Body Body::superellipsoid(int dim, int p) {
  if (dim < 2) throw std::invalid_argument("superellipsoid: dim must be >= 2");
  if (p < 4 || p % 2 != 0) throw std::invalid_argument("superellipsoid: p must be an even integer >= 4");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Superellipsoid;
  impl->dim = dim;
  impl->p = p;
  return Body(std::move(impl));
}

Body Body::shifted(Body inner, Eigen::VectorXd offset) {
  if (offset.size() != inner.dim()) throw std::invalid_argument("shifted: offset dimension mismatch");
  if (inner.minkowski(-offset) >= 1.0)
    throw std::invalid_argument("shifted: origin is not interior after the shift");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Shifted;
  impl->dim = inner.dim();
  impl->inner = inner.impl_;
  impl->offset = std::move(offset);
  return Body(std::move(impl));
}

Body Body::custom(const std::string& id, int dim) {
  if (id != "bumpy") throw std::invalid_argument("custom: unknown catalog id '" + id + "'");
  if (dim != 3) throw std::invalid_argument("custom 'bumpy': only dim 3 is in the catalog");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Custom;
  impl->dim = dim;
  impl->custom_id = id;
  return Body(std::move(impl));
}

int Body::dim() const { return impl_->dim; }
Body::Kind Body::kind() const { return impl_->kind; }

bool Body::convex() const {
  switch (impl_->kind) {
    case Kind::Ball:
    case Kind::Ellipsoid:
    case Kind::Superellipsoid:
      return true;
    case Kind::Shifted:
      return Body(impl_->inner).convex();
    case Kind::Custom:
      return false;
  }
  return false;
}

bool Body::origin_symmetric() const {
  switch (impl_->kind) {
    case Kind::Ball:
      return true;
    case Kind::Ellipsoid:
      return impl_->center.isZero(0.0);
    case Kind::Superellipsoid:
      return true;
    case Kind::Shifted:
      return impl_->offset.isZero(0.0) && Body(impl_->inner).origin_symmetric();
    case Kind::Custom:
      return false;
  }
  return false;
}

std::string Body::describe() const {
  switch (impl_->kind) {
    case Kind::Ball:
      return "ball(r=" + std::to_string(impl_->radius) + ",n=" + std::to_string(impl_->dim) + ")";
    case Kind::Ellipsoid:
      return "ellipsoid(n=" + std::to_string(impl_->dim) + ")";
    case Kind::Superellipsoid:
      return "superellipsoid(p=" + std::to_string(impl_->p) + ",n=" + std::to_string(impl_->dim) + ")";
    case Kind::Shifted:
      return "shifted(" + Body(impl_->inner).describe() + ")";
    case Kind::Custom:
      return "custom(" + impl_->custom_id + ")";
  }
  return "?";
}

double Body::minkowski(const Eigen::VectorXd& x) const {
  if (x.size() != impl_->dim) throw std::invalid_argument("minkowski: dimension mismatch");
  if (x.isZero(0.0)) return 0.0;  // ||0||_K = 0; origin is interior by construction
  return mink_impl(*impl_, x);
}

double Body::radial(const Direction& theta) const {
  return 1.0 / minkowski(theta.coords());
}

double Body::support(const Direction& xi) const {
  if (xi.dim() != impl_->dim) throw std::invalid_argument("support: dimension mismatch");
  switch (impl_->kind) {
    case Kind::Ball:
      return impl_->radius;
    case Kind::Ellipsoid:
      return std::sqrt(xi.coords().dot(impl_->M.ldlt().solve(xi.coords()))) +
             impl_->center.dot(xi.coords());
    case Kind::Superellipsoid: {
      // Dual norm: h(xi) = ||xi||_{p/(p-1)}.
      const double q = static_cast<double>(impl_->p) / (impl_->p - 1);
      double s = 0.0;
      for (int i = 0; i < impl_->dim; ++i) s += std::pow(std::abs(xi[i]), q);
      return std::pow(s, 1.0 / q);
    }
    case Kind::Shifted:
      return Body(impl_->inner).support(xi) + impl_->offset.dot(xi.coords());
    case Kind::Custom:
      throw std::runtime_error("support: unsupported for non-convex custom body");
  }
  throw std::logic_error("unreachable");
}

Chord Body::chord(const Direction& xi) const {
  return Chord{-support(-xi), support(xi)};
}

std::optional<Body::EllipsoidForm> Body::ellipsoid_form() const {
  switch (impl_->kind) {
    case Kind::Ball: {
      const int n = impl_->dim;
      return EllipsoidForm{Eigen::MatrixXd::Identity(n, n) / (impl_->radius * impl_->radius),
                           Eigen::VectorXd::Zero(n)};
    }
    case Kind::Ellipsoid:
      return EllipsoidForm{impl_->M, impl_->center};
    case Kind::Shifted: {
      auto inner = Body(impl_->inner).ellipsoid_form();
      if (!inner) return std::nullopt;
      inner->center += impl_->offset;
      return inner;
    }
    default:
      return std::nullopt;
  }
}

Eigen::MatrixXd orthonormal_frame(const Direction& xi) {
  const int n = xi.dim();
  Eigen::VectorXd v = xi.coords();
  v[0] -= 1.0;  // v = xi - e1
  Eigen::MatrixXd frame(n, n - 1);
  const double vv = v.squaredNorm();
  if (vv < 1e-16) {
    frame.setZero();
    for (int j = 0; j < n - 1; ++j) frame(j + 1, j) = 1.0;
    return frame;
  }
  for (int j = 0; j < n - 1; ++j) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    col[j + 1] = 1.0;
    frame.col(j) = col - (2.0 * v[j + 1] / vv) * v;
  }
  return frame;
}

double support_by_scan(const Body& body, const Direction& xi, int scan_points) {
  if (!body.convex()) throw std::runtime_error("support_by_scan: body must be convex");
  const int n = body.dim();
  const auto dirs = sphere_directions(n, scan_points, n == 3 ? 0u : 1u);
  Eigen::VectorXd best = dirs[0];
  double best_val = -1e300;
  for (const auto& d : dirs) {
    const double val = body.radial(Direction(d)) * d.dot(xi.coords());
    if (val > best_val) {
      best_val = val;
      best = d;
    }
  }
  // Compass search in tangent coordinates around the best scan point.
  Eigen::MatrixXd F = orthonormal_frame(Direction(best));
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n - 1);
  const auto eval = [&](const Eigen::VectorXd& uu) {
    Eigen::VectorXd w = best + F * uu;
    w.normalize();
    return body.radial(Direction(w)) * w.dot(xi.coords());
  };
  double step = 0.05;
  while (step > 1e-9) {
    bool improved = false;
    for (int j = 0; j < n - 1; ++j) {
      for (double s : {step, -step}) {
        Eigen::VectorXd trial = u;
        trial[j] += s;
        const double val = eval(trial);
        if (val > best_val) {
          best_val = val;
          u = trial;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best_val;
}

nlohmann::json Body::to_json() const {
  nlohmann::json j;
  switch (impl_->kind) {
    case Kind::Ball:
      j = {{"type", "ball"}, {"radius", impl_->radius}, {"dim", impl_->dim}};
      break;
    case Kind::Ellipsoid: {
      std::vector<std::vector<double>> m(impl_->dim, std::vector<double>(impl_->dim));
      for (int r = 0; r < impl_->dim; ++r)
        for (int c = 0; c < impl_->dim; ++c) m[r][c] = impl_->M(r, c);
      std::vector<double> c(impl_->center.data(), impl_->center.data() + impl_->dim);
      j = {{"type", "ellipsoid"}, {"matrix", m}, {"center", c}};
      break;
    }
    case Kind::Superellipsoid:
      j = {{"type", "superellipsoid"}, {"p", impl_->p}, {"dim", impl_->dim}};
      break;
    case Kind::Shifted: {
      std::vector<double> off(impl_->offset.data(), impl_->offset.data() + impl_->dim);
      j = {{"type", "shifted"}, {"offset", off}, {"inner", Body(impl_->inner).to_json()}};
      break;
    }
    case Kind::Custom:
      j = {{"type", "custom"}, {"id", impl_->custom_id}, {"dim", impl_->dim}};
      break;
  }
  return j;
}

namespace {
void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("body json: " + msg);
}
}  // namespace

Body Body::from_json(const nlohmann::json& j) {
  require(j.is_object(), "expected an object");
  require(j.contains("type") && j["type"].is_string(), "missing string field 'type'");
  const std::string type = j["type"];
  if (type == "ball") {
    require(j.contains("radius") && j["radius"].is_number(), "ball needs numeric 'radius'");
    require(j.contains("dim") && j["dim"].is_number_integer(), "ball needs integer 'dim'");
    return ball(j["dim"], j["radius"]);
  }
  if (type == "ellipsoid") {
    require(j.contains("matrix") && j["matrix"].is_array(), "ellipsoid needs array 'matrix'");
    const auto& m = j["matrix"];
    const int n = static_cast<int>(m.size());
    require(n >= 2, "ellipsoid matrix must be at least 2x2");
    Eigen::MatrixXd M(n, n);
    for (int r = 0; r < n; ++r) {
      require(m[r].is_array() && static_cast<int>(m[r].size()) == n, "ellipsoid matrix must be square");
      for (int c = 0; c < n; ++c) {
        require(m[r][c].is_number(), "ellipsoid matrix entries must be numeric");
        M(r, c) = m[r][c];
      }
    }
    Eigen::VectorXd center = Eigen::VectorXd::Zero(n);
    if (j.contains("center")) {
      require(j["center"].is_array() && static_cast<int>(j["center"].size()) == n,
              "ellipsoid center must match the matrix dimension");
      for (int i = 0; i < n; ++i) center[i] = j["center"][i];
    }
    return ellipsoid(std::move(M), std::move(center));
  }
  if (type == "superellipsoid") {
    require(j.contains("p") && j["p"].is_number_integer(), "superellipsoid needs integer 'p'");
    require(j.contains("dim") && j["dim"].is_number_integer(), "superellipsoid needs integer 'dim'");
    return superellipsoid(j["dim"], j["p"]);
  }
  if (type == "shifted") {
    require(j.contains("inner"), "shifted needs 'inner'");
    require(j.contains("offset") && j["offset"].is_array(), "shifted needs array 'offset'");
    Body inner = from_json(j["inner"]);
    Eigen::VectorXd off(inner.dim());
    require(static_cast<int>(j["offset"].size()) == inner.dim(),
            "shifted offset must match the inner body dimension");
    for (int i = 0; i < inner.dim(); ++i) off[i] = j["offset"][i];
    return shifted(std::move(inner), std::move(off));
  }
  if (type == "custom") {
    require(j.contains("id") && j["id"].is_string(), "custom needs string 'id'");
    require(j.contains("dim") && j["dim"].is_number_integer(), "custom needs integer 'dim'");
    return custom(j["id"], j["dim"]);
  }
  throw std::invalid_argument("body json: unknown type '" + type + "'");
}

}  // namespace psf
