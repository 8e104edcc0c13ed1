#include "degen/samplers.hpp"

#include <cmath>
#include <numbers>

namespace degen {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

// max{m : m*step <= x} * step, robust against the division rounding across
// an integer boundary. Re-quantizing an already snapped value reproduces it
// bit-for-bit.
double snap_floor(double x, double step) {
  double m = std::floor(x / step);
  if ((m + 1.0) * step <= x) {
    m += 1.0;
  } else if (m * step > x) {
    m -= 1.0;
  }
  return m * step;
}

void add_gaussian(std::vector<double>& coords, double sigma, SeededRng& rng) {
  if (sigma == 0.0) return;
  for (double& c : coords) c += sigma * rng.normal();
}

}  // namespace

QuantizationGrid::QuantizationGrid(double sx, double sy, double sz)
    : step_x(sx), step_y(sy), step_z(sz) {
  if (!positive_finite(sx) || !positive_finite(sy) || !positive_finite(sz)) {
    throw InvalidInputError("QuantizationGrid: steps must be finite and > 0");
  }
}

NoiseModel::NoiseModel(double s) : sigma(s) {
  if (!(std::isfinite(s) && s >= 0.0)) {
    throw InvalidInputError("NoiseModel: sigma must be finite and >= 0");
  }
}

PatchExtent::PatchExtent(double umin, double umax, double vmin, double vmax)
    : u_min(umin), u_max(umax), v_min(vmin), v_max(vmax) {
  if (!(std::isfinite(umin) && std::isfinite(umax) && std::isfinite(vmin) &&
        std::isfinite(vmax)) ||
      !(umin < umax) || !(vmin < vmax)) {
    throw InvalidInputError("PatchExtent: bounds must enclose positive area");
  }
}

SceneModel::SceneModel(double radius, double height)
    : sensing_radius(radius), sensing_height(height) {
  if (!positive_finite(radius) || !positive_finite(height)) {
    throw InvalidInputError("SceneModel: cylinder radius and height must be > 0");
  }
}

double SceneModel::total_volume() const {
  return std::numbers::pi * sensing_radius * sensing_radius * sensing_height;
}

PointCloud sample_uniform_hypercube(std::size_t n, std::size_t d,
                                    const SeededRng& rng) {
  if (d < 1) throw InvalidInputError("sample_uniform_hypercube: d must be >= 1");
  PointCloud cloud(d);
  cloud.reserve(n);
  std::vector<double> coords(d);
  for (std::size_t i = 0; i < n; ++i) {
    SeededRng point_rng = rng.substream("uniform-hypercube", i);
    for (std::size_t j = 0; j < d; ++j) coords[j] = point_rng.uniform01();
    cloud.append(coords);
  }
  return cloud;
}

PointCloud sample_plane_patch(const PlaneManifold& plane,
                              const PatchExtent& extent, std::size_t n,
                              const NoiseModel& noise, const SeededRng& rng) {
  // In-plane orthonormal basis: pivot on the normal's smallest component.
  const Vec3 nrm = plane.normal();
  int pivot = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::abs(nrm(k)) < std::abs(nrm(pivot))) pivot = k;
  }
  Vec3 axis = Vec3::Zero();
  axis(pivot) = 1.0;
  const Vec3 u = nrm.cross(axis).normalized();
  const Vec3 v = nrm.cross(u);
  const Vec3 anchor = plane.anchor();

  PointCloud cloud(3);
  cloud.reserve(n);
  std::vector<double> coords(3);
  for (std::size_t i = 0; i < n; ++i) {
    SeededRng point_rng = rng.substream("plane-patch", i);
    const double su = point_rng.uniform(extent.u_min, extent.u_max);
    const double sv = point_rng.uniform(extent.v_min, extent.v_max);
    const Vec3 p = anchor + su * u + sv * v;
    coords = {p(0), p(1), p(2)};
    add_gaussian(coords, noise.sigma, point_rng);
    cloud.append(coords);
  }
  return cloud;
}

PointCloud sample_sphere_surface(const SphereManifold& sphere, std::size_t n,
                                 const NoiseModel& noise, const SeededRng& rng) {
  const std::size_t d = sphere.dim();
  PointCloud cloud(d);
  cloud.reserve(n);
  std::vector<double> coords(d);
  for (std::size_t i = 0; i < n; ++i) {
    SeededRng point_rng = rng.substream("sphere-surface", i);
    VecX dir(d);
    double norm2;
    do {
      for (std::size_t j = 0; j < d; ++j) dir(static_cast<Eigen::Index>(j)) = point_rng.normal();
      norm2 = dir.squaredNorm();
    } while (norm2 == 0.0);
    const VecX p = sphere.center() + (sphere.radius() / std::sqrt(norm2)) * dir;
    for (std::size_t j = 0; j < d; ++j) coords[j] = p(static_cast<Eigen::Index>(j));
    add_gaussian(coords, noise.sigma, point_rng);
    cloud.append(coords);
  }
  return cloud;
}

PointCloud sample_line_segment(const LineManifold& line, double t_min,
                               double t_max, std::size_t n,
                               const NoiseModel& noise, const SeededRng& rng) {
  if (!(t_min < t_max)) {
    throw InvalidInputError("sample_line_segment: need t_min < t_max");
  }
  const std::size_t d = line.dim();
  PointCloud cloud(d);
  cloud.reserve(n);
  std::vector<double> coords(d);
  for (std::size_t i = 0; i < n; ++i) {
    SeededRng point_rng = rng.substream("line-segment", i);
    const double t = point_rng.uniform(t_min, t_max);
    const VecX p = line.base() + t * line.direction();
    for (std::size_t j = 0; j < d; ++j) coords[j] = p(static_cast<Eigen::Index>(j));
    add_gaussian(coords, noise.sigma, point_rng);
    cloud.append(coords);
  }
  return cloud;
}

PointCloud quantize(const PointCloud& cloud, const QuantizationGrid& grid) {
  if (cloud.dim() != 3) {
    throw InvalidInputError("quantize: only 3-dimensional clouds are supported");
  }
  std::vector<double> out;
  out.reserve(cloud.flat().size());
  const double steps[3] = {grid.step_x, grid.step_y, grid.step_z};
  const auto& flat = cloud.flat();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    out.push_back(snap_floor(flat[i], steps[i % 3]));
  }
  return PointCloud(3, std::move(out));
}

PointCloud add_noise(const PointCloud& cloud, const NoiseModel& noise,
                     const SeededRng& rng) {
  if (noise.sigma == 0.0) return cloud;
  const std::size_t d = cloud.dim();
  PointCloud out(d);
  out.reserve(cloud.size());
  std::vector<double> coords(d);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    SeededRng point_rng = rng.substream("additive-noise", i);
    auto p = cloud[i];
    for (std::size_t j = 0; j < d; ++j) coords[j] = p[j] + noise.sigma * point_rng.normal();
    out.append(coords);
  }
  return out;
}

PointCloud sample_scene(const SceneModel& scene, std::size_t n_background,
                        std::size_t n_per_surface, const NoiseModel& noise,
                        const SeededRng& rng) {
  PointCloud cloud(3);
  const double radius = scene.sensing_radius;

  // Background: uniform in the cylinder by rejection from its bounding box.
  // Each point owns a substream, so the retry count of one point never
  // shifts another point's draws.
  for (std::size_t i = 0; i < n_background; ++i) {
    SeededRng point_rng = rng.substream("scene-background", i);
    double x, y;
    do {
      x = point_rng.uniform(-radius, radius);
      y = point_rng.uniform(-radius, radius);
    } while (x * x + y * y > radius * radius);
    const double z = point_rng.uniform(0.0, scene.sensing_height);
    const double coords[3] = {x, y, z};
    cloud.append(coords);
  }

  auto append_all = [&cloud](const PointCloud& part) {
    for (std::size_t i = 0; i < part.size(); ++i) cloud.append(part[i]);
  };

  // Surface samples: planes get a square patch of half-extent R, lines get
  // t in [-R, R) around their base.
  for (std::size_t pi = 0; pi < scene.planes.size(); ++pi) {
    append_all(sample_plane_patch(scene.planes[pi],
                                  PatchExtent(-radius, radius, -radius, radius),
                                  n_per_surface, noise,
                                  rng.substream("scene-plane", pi)));
  }
  if (scene.sphere.has_value()) {
    append_all(sample_sphere_surface(*scene.sphere, n_per_surface, noise,
                                     rng.substream("scene-sphere", 0)));
  }
  for (std::size_t li = 0; li < scene.lines.size(); ++li) {
    append_all(sample_line_segment(scene.lines[li], -radius, radius,
                                   n_per_surface, noise,
                                   rng.substream("scene-line", li)));
  }
  return cloud;
}

}  // namespace degen
