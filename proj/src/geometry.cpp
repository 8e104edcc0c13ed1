#include "degen/geometry.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace degen {

namespace {

void require_finite(std::span<const double> coords, const char* what) {
  for (double c : coords) {
    if (!std::isfinite(c)) {
      std::ostringstream msg;
      msg << what << ": non-finite coordinate " << c;
      throw InvalidInputError(msg.str());
    }
  }
}

void require_finite(const VecX& v, const char* what) {
  require_finite(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())), what);
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw InvalidInputError(msg.str());
  }
}

}  // namespace

ToleranceSpec::ToleranceSpec(double eps, double del) : epsilon(eps), delta(del) {
  if (!(std::isfinite(eps) && eps >= 0.0)) {
    throw InvalidInputError("ToleranceSpec: epsilon must be finite and >= 0");
  }
  if (!(std::isfinite(del) && del >= 0.0)) {
    throw InvalidInputError("ToleranceSpec: delta must be finite and >= 0");
  }
}

PointCloud::PointCloud(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidInputError("PointCloud: dimension must be >= 1");
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> flat_coords)
    : dim_(dim), data_(std::move(flat_coords)) {
  if (dim == 0) throw InvalidInputError("PointCloud: dimension must be >= 1");
  if (data_.size() % dim_ != 0) {
    throw InvalidInputError("PointCloud: flat buffer size is not a multiple of dim");
  }
  require_finite(std::span<const double>(data_), "PointCloud");
}

void PointCloud::append(std::span<const double> coords) {
  require_same_dim(coords.size(), dim_, "PointCloud::append");
  require_finite(coords, "PointCloud::append");
  data_.insert(data_.end(), coords.begin(), coords.end());
}

void PointCloud::append(const VecX& p) {
  append(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

VecX PointCloud::point(std::size_t i) const {
  return Eigen::Map<const VecX>(data_.data() + i * dim_, static_cast<Eigen::Index>(dim_));
}

LineManifold::LineManifold(VecX base, VecX direction)
    : base_(std::move(base)), direction_(std::move(direction)) {
  require_same_dim(static_cast<std::size_t>(base_.size()),
                   static_cast<std::size_t>(direction_.size()), "LineManifold");
  require_finite(base_, "LineManifold base");
  require_finite(direction_, "LineManifold direction");
  const double norm = direction_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidInputError("LineManifold: direction must be nonzero");
  }
  direction_ /= norm;
}

PlaneManifold::PlaneManifold(const Vec3& normal, double offset) {
  require_finite(normal, "PlaneManifold normal");
  if (!std::isfinite(offset)) throw InvalidInputError("PlaneManifold: non-finite offset");
  const double norm = normal.norm();
  if (!(norm > 0.0)) throw InvalidInputError("PlaneManifold: normal must be nonzero");
  normal_ = normal / norm;
  offset_ = offset / norm;
}

SphereManifold::SphereManifold(VecX center, double radius)
    : center_(std::move(center)), radius_(radius) {
  require_finite(center_, "SphereManifold center");
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw InvalidInputError("SphereManifold: radius must be finite and > 0");
  }
}

double collinearity_residual(const Vec3& p1, const Vec3& p2, const Vec3& p3) {
  require_finite(p1, "collinearity_residual");
  require_finite(p2, "collinearity_residual");
  require_finite(p3, "collinearity_residual");
  return detail::collinearity_residual_raw(p1.data(), p2.data(), p3.data());
}

bool is_collinear(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                  const ToleranceSpec& tol) {
  return collinearity_residual(p1, p2, p3) < tol.epsilon;
}

double coplanarity_residual(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                            const Vec3& p4) {
  require_finite(p1, "coplanarity_residual");
  require_finite(p2, "coplanarity_residual");
  require_finite(p3, "coplanarity_residual");
  require_finite(p4, "coplanarity_residual");
  return detail::coplanarity_residual_raw(p1.data(), p2.data(), p3.data(), p4.data());
}

bool is_coplanar(const Vec3& p1, const Vec3& p2, const Vec3& p3, const Vec3& p4,
                 const ToleranceSpec& tol) {
  return coplanarity_residual(p1, p2, p3, p4) < tol.epsilon;
}

double point_line_distance(const VecX& p, const LineManifold& line) {
  require_same_dim(static_cast<std::size_t>(p.size()), line.dim(),
                   "point_line_distance");
  require_finite(p, "point_line_distance");
  const VecX w = p - line.base();
  const double t = w.dot(line.direction());
  return (w - t * line.direction()).norm();
}

double point_plane_distance(const Vec3& p, const PlaneManifold& plane) {
  require_finite(p, "point_plane_distance");
  return std::abs(plane.normal().dot(p) + plane.offset());
}

double sphere_residual(const VecX& p, const SphereManifold& sphere) {
  require_same_dim(static_cast<std::size_t>(p.size()), sphere.dim(),
                   "sphere_residual");
  require_finite(p, "sphere_residual");
  const double d2 = (p - sphere.center()).squaredNorm();
  return std::abs(d2 - sphere.radius() * sphere.radius());
}

SphereManifold fit_sphere(const PointCloud& points) {
  const auto n = points.size();
  const auto d = points.dim();
  if (n < d + 1) {
    throw InvalidInputError("fit_sphere: need at least dim+1 points");
  }

  // ||p||^2 = 2 <p, c> + t  with  t = r^2 - ||c||^2.
  Eigen::MatrixXd a(n, d + 1);
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VecX p = points.point(i);
    a.row(static_cast<Eigen::Index>(i)).head(static_cast<Eigen::Index>(d)) =
        2.0 * p.transpose();
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) = 1.0;
    rhs(static_cast<Eigen::Index>(i)) = p.squaredNorm();
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < static_cast<Eigen::Index>(d + 1)) {
    throw RankDeficiencyError(
        "fit_sphere: points are coplanar or collinear; the normal system is "
        "rank deficient");
  }
  const Eigen::VectorXd sol = qr.solve(rhs);
  const VecX center = sol.head(static_cast<Eigen::Index>(d));
  const double r2 = sol(static_cast<Eigen::Index>(d)) + center.squaredNorm();
  if (!(r2 > 0.0) || !std::isfinite(r2)) {
    throw RankDeficiencyError("fit_sphere: solution has non-positive squared radius");
  }
  return SphereManifold(center, std::sqrt(r2));
}

bool is_nearly_spherical(const PointCloud& points, const SphereManifold& sphere,
                         const ToleranceSpec& tol) {
  if (points.empty()) {
    throw InvalidInputError("is_nearly_spherical: empty point cloud");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (sphere_residual(points.point(i), sphere) > tol.delta) return false;
  }
  return true;
}

double manifold_distance(const VecX& p, const AnyManifold& manifold) {
  return std::visit(
      [&p](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, LineManifold>) {
          return point_line_distance(p, m);
        } else if constexpr (std::is_same_v<M, PlaneManifold>) {
          require_same_dim(static_cast<std::size_t>(p.size()), 3,
                           "manifold_distance(plane)");
          return point_plane_distance(Vec3(p(0), p(1), p(2)), m);
        } else {
          require_same_dim(static_cast<std::size_t>(p.size()), m.dim(),
                           "manifold_distance(sphere)");
          return std::abs((p - m.center()).norm() - m.radius());
        }
      },
      manifold);
}

bool region_membership(const VecX& p,
                       std::span<const TolerancedManifold> manifolds) {
  if (manifolds.empty()) {
    throw InvalidInputError("region_membership: manifold list is empty");
  }
  for (const auto& tm : manifolds) {
    if (manifold_distance(p, tm.manifold) <= tm.delta) return true;
  }
  return false;
}

}  // namespace degen
