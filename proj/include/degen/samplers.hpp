#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "degen/geometry.hpp"
#include "degen/rng.hpp"

namespace degen {

/// Per-axis floor-quantization step sizes (same length units as coordinates).
struct QuantizationGrid {
  double step_x = 0.0;
  double step_y = 0.0;
  double step_z = 0.0;

  QuantizationGrid(double sx, double sy, double sz);
};

/// Isotropic Gaussian perturbation N(0, sigma^2 I).
struct NoiseModel {
  double sigma = 0.0;

  NoiseModel() = default;
  explicit NoiseModel(double s);
};

/// In-plane rectangular patch bounds in the plane's orthonormal basis.
struct PatchExtent {
  double u_min, u_max;
  double v_min, v_max;

  PatchExtent(double umin, double umax, double vmin, double vmax);
};

/// Structured environment: a cylindrical sensing volume of radius R and
/// height h (axis = z, base at z=0) containing reflective manifolds.
struct SceneModel {
  double sensing_radius;
  double sensing_height;
  double plane_area = 0.0;
  std::vector<PlaneManifold> planes;
  std::optional<SphereManifold> sphere;
  std::vector<LineManifold> lines;

  SceneModel(double radius, double height);
  double total_volume() const;
};

/// n points with i.i.d. U[0,1) coordinates in dimension d.
PointCloud sample_uniform_hypercube(std::size_t n, std::size_t d,
                                    const SeededRng& rng);

/// n points uniform on a rectangular plane patch, plus Gaussian noise.
/// The in-plane basis is derived deterministically from the normal
/// (smallest-component pivot).
PointCloud sample_plane_patch(const PlaneManifold& plane,
                              const PatchExtent& extent, std::size_t n,
                              const NoiseModel& noise, const SeededRng& rng);

/// n points uniform on the sphere surface (normalized isotropic Gaussian
/// directions), plus Gaussian noise.
PointCloud sample_sphere_surface(const SphereManifold& sphere, std::size_t n,
                                 const NoiseModel& noise, const SeededRng& rng);

/// n points with t uniform on [t_min, t_max) along the line, plus noise.
PointCloud sample_line_segment(const LineManifold& line, double t_min,
                               double t_max, std::size_t n,
                               const NoiseModel& noise, const SeededRng& rng);

/// Floor-quantize every coordinate to its axis grid:
/// x -> floor(x / step) * step. Idempotent bit-for-bit. 3-D only.
PointCloud quantize(const PointCloud& cloud, const QuantizationGrid& grid);

/// Adds i.i.d. N(0, sigma^2 I) to every point; sigma = 0 is the identity.
PointCloud add_noise(const PointCloud& cloud, const NoiseModel& noise,
                     const SeededRng& rng);

/// Background points uniform in the scene cylinder plus n_per_surface noisy
/// samples from every listed manifold (planes, sphere, lines).
PointCloud sample_scene(const SceneModel& scene, std::size_t n_background,
                        std::size_t n_per_surface, const NoiseModel& noise,
                        const SeededRng& rng);

}  // namespace degen
