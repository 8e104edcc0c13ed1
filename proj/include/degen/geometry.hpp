#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "degen/errors.hpp"

namespace degen {

using Vec3 = Eigen::Vector3d;
using VecX = Eigen::VectorXd;

/// Residual threshold epsilon (strict "< eps" tests on determinant-style
/// residuals) and manifold-distance tolerance delta (inclusive "<= delta").
struct ToleranceSpec {
  double epsilon = 0.0;
  double delta = 0.0;

  ToleranceSpec() = default;
  ToleranceSpec(double eps, double del);
};

/// A collection of N points sharing one dimension, stored as a flat
/// row-major buffer. All coordinates are validated finite on insertion.
class PointCloud {
 public:
  explicit PointCloud(std::size_t dim);
  PointCloud(std::size_t dim, std::vector<double> flat_coords);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return data_.size() / dim_; }
  bool empty() const { return data_.empty(); }

  void reserve(std::size_t n) { data_.reserve(n * dim_); }
  void append(std::span<const double> coords);
  void append(const VecX& p);

  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  Vec3 at3(std::size_t i) const {
    const double* p = data_.data() + i * 3;
    return {p[0], p[1], p[2]};
  }
  VecX point(std::size_t i) const;

  const std::vector<double>& flat() const { return data_; }
  std::vector<double>& flat() { return data_; }

  bool operator==(const PointCloud&) const = default;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

/// Line { base + t * direction }. The direction is normalized on
/// construction; a zero direction is rejected.
class LineManifold {
 public:
  LineManifold(VecX base, VecX direction);

  const VecX& base() const { return base_; }
  const VecX& direction() const { return direction_; }
  std::size_t dim() const { return static_cast<std::size_t>(base_.size()); }

 private:
  VecX base_;
  VecX direction_;
};

/// Plane { x : n.x + offset = 0 } in R^3. The normal is stored unit-length
/// (offset rescaled accordingly) so the algebraic residual |n.p + offset|
/// is the Euclidean distance.
class PlaneManifold {
 public:
  PlaneManifold(const Vec3& normal, double offset);

  const Vec3& normal() const { return normal_; }
  double offset() const { return offset_; }

  /// An arbitrary point on the plane (the one closest to the origin).
  Vec3 anchor() const { return -offset_ * normal_; }

 private:
  Vec3 normal_;
  double offset_;
};

/// Sphere { x : ||x - center|| = radius }, radius > 0.
class SphereManifold {
 public:
  SphereManifold(VecX center, double radius);

  const VecX& center() const { return center_; }
  double radius() const { return radius_; }
  std::size_t dim() const { return static_cast<std::size_t>(center_.size()); }

 private:
  VecX center_;
  double radius_;
};

// --- residuals and predicates -------------------------------------------

namespace detail {

// Unvalidated kernels over raw coordinate triples/quads. The public
// operations and the exhaustive counters share these so both paths see
// bit-identical residuals.
inline double collinearity_residual_raw(const double* a, const double* b,
                                        const double* c) {
  const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  const double cx = uy * vz - uz * vy;
  const double cy = uz * vx - ux * vz;
  const double cz = ux * vy - uy * vx;
  return std::sqrt(cx * cx + cy * cy + cz * cz);
}

// |det[b-a; c-a; d-a]|, equal to the homogeneous 4x4 determinant.
inline double coplanarity_residual_raw(const double* a, const double* b,
                                       const double* c, const double* d) {
  const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  const double wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
  const double det = ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) +
                     uz * (vx * wy - vy * wx);
  return std::abs(det);
}

}  // namespace detail

/// ||(p2-p1) x (p3-p1)||: twice the triangle area, 0 iff collinear
/// (repeated points count as collinear).
double collinearity_residual(const Vec3& p1, const Vec3& p2, const Vec3& p3);

/// Strict test: collinearity_residual < tol.epsilon.
bool is_collinear(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                  const ToleranceSpec& tol);

/// |det| of the homogeneous 4x4 point matrix (six times the tetrahedron
/// volume), 0 iff coplanar.
double coplanarity_residual(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                            const Vec3& p4);

/// Strict test: coplanarity_residual < tol.epsilon.
bool is_coplanar(const Vec3& p1, const Vec3& p2, const Vec3& p3,
                 const Vec3& p4, const ToleranceSpec& tol);

/// Perpendicular distance ||(p-c) - <p-c,v> v||.
double point_line_distance(const VecX& p, const LineManifold& line);

/// |n.p + offset| with the unit normal: true Euclidean distance.
double point_plane_distance(const Vec3& p, const PlaneManifold& plane);

/// Squared-radius residual | ||p-c||^2 - r^2 |.
double sphere_residual(const VecX& p, const SphereManifold& sphere);

/// Algebraic least-squares sphere through >= dim+1 points: solves the
/// linearized system ||p||^2 = 2<p,c> + (r^2 - ||c||^2). Exact on
/// noise-free spherical data; throws RankDeficiencyError when the points
/// span no sphere (coplanar/collinear input).
SphereManifold fit_sphere(const PointCloud& points);

/// True iff every point satisfies sphere_residual <= tol.delta (inclusive).
bool is_nearly_spherical(const PointCloud& points, const SphereManifold& sphere,
                         const ToleranceSpec& tol);

// --- union-of-manifolds membership ---------------------------------------

using AnyManifold = std::variant<LineManifold, PlaneManifold, SphereManifold>;

struct TolerancedManifold {
  AnyManifold manifold;
  double delta = 0.0;
};

/// Distance from p to a manifold of any kind. Spheres use the unsquared
/// surface distance | ||p-c|| - r | here, unlike sphere_residual.
double manifold_distance(const VecX& p, const AnyManifold& manifold);

/// True iff p lies within delta_i of at least one manifold (inclusive).
bool region_membership(const VecX& p,
                       std::span<const TolerancedManifold> manifolds);

}  // namespace degen
