#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "degen/geometry.hpp"
#include "degen/rng.hpp"
#include "degen/samplers.hpp"
#include "test_util.hpp"

using namespace degen;
using degen::test::random_point;
using degen::test::random_rotation;
using degen::test::rel_err;

TEST_CASE("collinearity residual on known configurations") {
  CHECK(collinearity_residual({0, 0, 0}, {1, 1, 1}, {2, 2, 2}) == 0.0);
  CHECK(collinearity_residual({0, 0, 0}, {1, 0, 0}, {0, 1, 0}) == 1.0);
  // Exact-rational cross product of the double inputs, rounded once.
  const double frozen = 0.5661271941887265;
  const double got = collinearity_residual({0.1, 0.2, 0.3}, {0.4, 0.8, 0.1},
                                           {0.9, 0.5, 0.7});
  CHECK(rel_err(got, frozen) < 1e-15);
}

TEST_CASE("collinearity of repeated points") {
  CHECK(collinearity_residual({0.3, 0.4, 0.5}, {0.3, 0.4, 0.5}, {0.9, 0.1, 0.2}) ==
        0.0);
  CHECK(is_collinear({0.3, 0.4, 0.5}, {0.3, 0.4, 0.5}, {0.9, 0.1, 0.2},
                     ToleranceSpec(1e-9, 0)));
}

TEST_CASE("is_collinear strict inequality at the boundary") {
  const ToleranceSpec tiny(1e-9, 0);
  CHECK(is_collinear({0, 0, 0}, {1, 1, 1}, {2, 2, 2}, tiny));
  CHECK_FALSE(is_collinear({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, tiny));
  // Residual of the unit right triangle is exactly 1: strict < excludes it.
  CHECK_FALSE(is_collinear({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, ToleranceSpec(1.0, 0)));
  CHECK(is_collinear({0, 0, 0}, {1, 0, 0}, {0, 1, 0},
                     ToleranceSpec(std::nextafter(1.0, 2.0), 0)));
}

TEST_CASE("coplanarity residual on known configurations") {
  CHECK(coplanarity_residual({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}) == 0.0);
  CHECK(coplanarity_residual({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}) == 1.0);
  // Exact-rational 4x4 homogeneous determinant of the double inputs.
  const double frozen = 0.283;
  const double got = coplanarity_residual({0.1, 0.2, 0.3}, {0.4, 0.8, 0.1},
                                          {0.9, 0.5, 0.7}, {0.2, 0.9, 0.6});
  CHECK(rel_err(got, frozen) < 1e-14);
}

TEST_CASE("is_coplanar thresholds") {
  const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0}, d{0, 0, 1};
  CHECK(is_coplanar(a, b, c, {1, 1, 0}, ToleranceSpec(1e-9, 0)));
  CHECK_FALSE(is_coplanar(a, b, c, d, ToleranceSpec(1e-9, 0)));
  CHECK(is_coplanar(a, b, c, d, ToleranceSpec(2.0, 0)));
}

TEST_CASE("residuals reject non-finite and mismatched input") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(collinearity_residual({inf, 0, 0}, {1, 0, 0}, {0, 1, 0}),
                  InvalidInputError);
  CHECK_THROWS_AS(
      coplanarity_residual({0, 0, std::nan("")}, {1, 0, 0}, {0, 1, 0}, {1, 1, 1}),
      InvalidInputError);
  const LineManifold line4d{VecX::Zero(4), VecX::Ones(4)};
  CHECK_THROWS_AS(point_line_distance(VecX::Zero(3), line4d), InvalidInputError);
}

TEST_CASE("point-line distance") {
  LineManifold x_axis{Vec3::Zero(), Vec3{1, 0, 0}};
  CHECK(point_line_distance(Vec3{0.5, 0, 0}, x_axis) == 0.0);
  CHECK(point_line_distance(Vec3{0, 1, 0}, x_axis) == 1.0);

  // Frozen from a 60-digit projection oracle on the double inputs.
  LineManifold slanted{Vec3{0.1, 0.1, 0.1}, Vec3{1, 2, 2}};
  const double frozen = 0.3543381937578216;
  CHECK(rel_err(point_line_distance(Vec3{0.3, 0.7, 0.2}, slanted), frozen) <
        1e-12);
}

TEST_CASE("point-plane distance") {
  PlaneManifold z0{Vec3{0, 0, 1}, 0.0};
  CHECK(point_plane_distance({0.3, 0.4, 0.0}, z0) == 0.0);
  CHECK(point_plane_distance({0.3, 0.4, 0.25}, z0) == 0.25);

  // Tilted plane, unnormalized constructor input; frozen 60-digit oracle.
  PlaneManifold tilted{Vec3{1, 2, 2}, -0.5};
  const double frozen = 0.7000000000000000;
  CHECK(rel_err(point_plane_distance({0.2, 0.4, 0.8}, tilted), frozen) < 1e-12);
}

TEST_CASE("plane constructor normalizes") {
  PlaneManifold p{Vec3{0, 0, 4}, -2.0};
  CHECK(p.normal().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.offset() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK_THROWS_AS(PlaneManifold(Vec3::Zero(), 1.0), InvalidInputError);
}

TEST_CASE("sphere residual") {
  SphereManifold unit{Vec3::Zero(), 1.0};
  CHECK(sphere_residual(Vec3{1, 0, 0}, unit) == 0.0);
  CHECK(sphere_residual(Vec3{2, 0, 0}, unit) == 3.0);
  CHECK_THROWS_AS(SphereManifold(Vec3::Zero(), 0.0), InvalidInputError);
  CHECK_THROWS_AS(sphere_residual(VecX::Zero(2), unit), InvalidInputError);

  // Noisy samples against an extended-precision recomputation.
  const SphereManifold sphere{Vec3{0.4, -0.2, 0.9}, 1.3};
  SeededRng rng(29);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p = random_point(rng, -1.0, 2.0);
    long double d2 = 0.0L;
    for (int j = 0; j < 3; ++j) {
      const long double diff = static_cast<long double>(p(j)) -
                               static_cast<long double>(sphere.center()(j));
      d2 += diff * diff;
    }
    const long double oracle =
        std::abs(d2 - static_cast<long double>(sphere.radius()) *
                          static_cast<long double>(sphere.radius()));
    CHECK(rel_err(sphere_residual(VecX(p), sphere),
                  static_cast<double>(oracle)) < 1e-13);
  }
}

TEST_CASE("fit_sphere recovers exact spheres") {
  const Vec3 centre{0.2, -0.3, 0.7};
  const double radius = 1.7;
  PointCloud cloud(3);
  SeededRng rng(7);
  for (int i = 0; i < 6; ++i) {
    Vec3 dir{rng.normal(), rng.normal(), rng.normal()};
    dir.normalize();
    cloud.append(VecX(centre + radius * dir));
  }
  const SphereManifold fit = fit_sphere(cloud);
  CHECK((fit.center() - centre).norm() < 1e-9);
  CHECK(std::abs(fit.radius() - radius) < 1e-9);
}

TEST_CASE("fit_sphere rejects degenerate input") {
  PointCloud coplanar(3);
  coplanar.append(std::array{0.0, 0.0, 0.0});
  coplanar.append(std::array{1.0, 0.0, 0.0});
  coplanar.append(std::array{0.0, 1.0, 0.0});
  coplanar.append(std::array{1.0, 1.0, 0.0});
  CHECK_THROWS_AS(fit_sphere(coplanar), RankDeficiencyError);

  PointCloud few(3);
  few.append(std::array{0.0, 0.0, 0.0});
  few.append(std::array{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(fit_sphere(few), InvalidInputError);
}

namespace {

// Independent geometric fit: minimizes sum (||p - c|| - r)^2 by the
// alternating fixed-point c = mean(p) + r * mean(u), r = mean(||p - c||).
void geometric_sphere_fit(const PointCloud& cloud, Vec3& centre, double& radius) {
  Vec3 mean = Vec3::Zero();
  for (std::size_t i = 0; i < cloud.size(); ++i) mean += cloud.at3(i);
  mean /= static_cast<double>(cloud.size());
  centre = mean;
  for (int iter = 0; iter < 500; ++iter) {
    double r = 0.0;
    Vec3 dir_sum = Vec3::Zero();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const Vec3 d = centre - cloud.at3(i);
      const double dist = d.norm();
      r += dist;
      dir_sum += d / dist;
    }
    r /= static_cast<double>(cloud.size());
    radius = r;
    centre = mean + (r / static_cast<double>(cloud.size())) * dir_sum;
  }
}

}  // namespace

TEST_CASE("fit_sphere on noisy data matches a geometric fit") {
  const SphereManifold truth{Vec3{0.1, 0.2, 0.3}, 1.0};
  PointCloud cloud =
      sample_sphere_surface(truth, 200, NoiseModel(0.01), SeededRng(11));
  const SphereManifold algebraic = fit_sphere(cloud);

  Vec3 geo_centre;
  double geo_radius = 0.0;
  geometric_sphere_fit(cloud, geo_centre, geo_radius);

  CHECK((Vec3(algebraic.center()) - geo_centre).norm() < 0.05);
  CHECK(std::abs(algebraic.radius() - geo_radius) < 0.05);
}

TEST_CASE("is_nearly_spherical") {
  const SphereManifold sphere{Vec3::Zero(), 1.0};
  PointCloud exact = sample_sphere_surface(sphere, 50, NoiseModel(0.0), SeededRng(3));
  CHECK(is_nearly_spherical(exact, sphere, ToleranceSpec(0, 1e-9)));

  PointCloud with_outlier = exact;
  with_outlier.append(std::array{2.0, 0.0, 0.0});
  CHECK_FALSE(is_nearly_spherical(with_outlier, sphere, ToleranceSpec(0, 1e-3)));

  PointCloud empty(3);
  CHECK_THROWS_AS(is_nearly_spherical(empty, sphere, ToleranceSpec(0, 1.0)),
                  InvalidInputError);
}

TEST_CASE("is_nearly_spherical under sigma-scaled tolerance, MC over seeds") {
  // delta = 4*sigma*r keeps a point inside the shell iff its radial noise
  // stays within ~2 sigma (the squared-form residual is ~2*r*sigma*z), so
  // each seed passes with probability ~0.954^n. Frozen from a 100-seed run.
  const SphereManifold sphere{Vec3::Zero(), 1.0};
  const double sigma = 0.01;
  const ToleranceSpec tol(0, 4 * sigma * sphere.radius());
  int trues = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PointCloud cloud =
        sample_sphere_surface(sphere, 8, NoiseModel(sigma), SeededRng(seed));
    if (is_nearly_spherical(cloud, sphere, tol)) ++trues;
  }
  CHECK(trues == 67);  // regression constant; binomial mean ~0.954^8 = 0.69
}

TEST_CASE("region membership over a union of manifolds") {
  std::vector<TolerancedManifold> manifolds;
  manifolds.push_back({PlaneManifold{Vec3{0, 0, 1}, 0.0}, 0.0});
  manifolds.push_back({SphereManifold{VecX(Vec3{5, 5, 5}), 1.0}, 0.1});
  manifolds.push_back({LineManifold{VecX(Vec3{0, 0, 9}), VecX(Vec3{1, 0, 0})}, 0.5});

  CHECK(region_membership(VecX(Vec3{0.3, 0.8, 0.0}), manifolds));
  CHECK(region_membership(VecX(Vec3{5, 5, 6.05}), manifolds));
  CHECK(region_membership(VecX(Vec3{7, 0.5, 9}), manifolds));
  CHECK_FALSE(region_membership(VecX(Vec3{2, 2, 2}), manifolds));

  // dist == delta is inside (inclusive).
  std::vector<TolerancedManifold> plane_only;
  plane_only.push_back({PlaneManifold{Vec3{0, 0, 1}, 0.0}, 0.25});
  CHECK(region_membership(VecX(Vec3{0, 0, 0.25}), plane_only));
  CHECK_FALSE(
      region_membership(VecX(Vec3{0, 0, std::nextafter(0.25, 1.0)}), plane_only));

  const std::vector<TolerancedManifold> none;
  CHECK_THROWS_AS(region_membership(VecX(Vec3{0, 0, 0}), none), InvalidInputError);
}

TEST_CASE("region membership with a single plane equals the distance test") {
  std::vector<TolerancedManifold> plane_only;
  const PlaneManifold plane{Vec3{1, 2, -1}, 0.3};
  const double delta = 0.2;
  plane_only.push_back({plane, delta});
  SeededRng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p = random_point(rng, -1.0, 1.0);
    CHECK(region_membership(VecX(p), plane_only) ==
          (point_plane_distance(p, plane) <= delta));
  }
}

TEST_CASE("residuals are permutation invariant") {
  SeededRng rng(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec3 p[3] = {random_point(rng), random_point(rng), random_point(rng)};
    const double reference = collinearity_residual(p[0], p[1], p[2]);
    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (const auto& perm : perms) {
      const double value =
          collinearity_residual(p[perm[0]], p[perm[1]], p[perm[2]]);
      CHECK(rel_err(value, reference) < 1e-12);
    }
  }
}

TEST_CASE("coplanarity residual is permutation invariant") {
  SeededRng rng(102);
  for (int trial = 0; trial < 1000; ++trial) {
    Vec3 p[4] = {random_point(rng), random_point(rng), random_point(rng),
                 random_point(rng)};
    const double reference = coplanarity_residual(p[0], p[1], p[2], p[3]);
    int order[4] = {0, 1, 2, 3};
    // All 24 permutations via repeated std::next_permutation.
    do {
      const double value =
          coplanarity_residual(p[order[0]], p[order[1]], p[order[2]], p[order[3]]);
      CHECK(rel_err(value, reference) < 1e-12);
    } while (std::next_permutation(order, order + 4));
  }
}

TEST_CASE("residuals are rigid-motion invariant") {
  SeededRng rng(103);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Matrix3d rot = random_rotation(rng);
    const Vec3 shift = random_point(rng, -2.0, 2.0);
    const Vec3 p[4] = {random_point(rng), random_point(rng), random_point(rng),
                       random_point(rng)};
    Vec3 q[4];
    for (int i = 0; i < 4; ++i) q[i] = rot * p[i] + shift;

    CHECK(rel_err(collinearity_residual(q[0], q[1], q[2]),
                  collinearity_residual(p[0], p[1], p[2])) < 1e-9);
    CHECK(rel_err(coplanarity_residual(q[0], q[1], q[2], q[3]),
                  coplanarity_residual(p[0], p[1], p[2], p[3])) < 1e-9);
  }
}

TEST_CASE("residual scaling laws: s^2 for triples, s^3 for quadruples") {
  SeededRng rng(104);
  for (int trial = 0; trial < 1000; ++trial) {
    const double s = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const Vec3 p[4] = {random_point(rng), random_point(rng), random_point(rng),
                       random_point(rng)};
    CHECK(rel_err(collinearity_residual(s * p[0], s * p[1], s * p[2]),
                  s * s * collinearity_residual(p[0], p[1], p[2])) < 1e-9);
    CHECK(rel_err(coplanarity_residual(s * p[0], s * p[1], s * p[2], s * p[3]),
                  s * s * s * coplanarity_residual(p[0], p[1], p[2], p[3])) <
          1e-9);
  }
}

TEST_CASE("zero plane distance iff coplanar with plane points") {
  // Three affinely independent points of z=0 plus a fourth point p:
  // coplanarity residual vanishes exactly when p lies in the plane.
  const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0, 1, 0};
  const PlaneManifold plane{Vec3{0, 0, 1}, 0.0};
  SeededRng rng(105);
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 p = random_point(rng);
    p(2) = 0.0;
    CHECK(point_plane_distance(p, plane) == 0.0);
    CHECK(coplanarity_residual(a, b, c, p) < 1e-9);

    Vec3 q = random_point(rng);
    q(2) = 0.5 + q(2);
    CHECK(rel_err(coplanarity_residual(a, b, c, q),
                  point_plane_distance(q, plane)) < 1e-9);
  }
}

TEST_CASE("tolerance spec validation") {
  CHECK_THROWS_AS(ToleranceSpec(-1.0, 0.0), InvalidInputError);
  CHECK_THROWS_AS(ToleranceSpec(0.0, -1.0), InvalidInputError);
  CHECK_THROWS_AS(ToleranceSpec(std::numeric_limits<double>::infinity(), 0.0),
                  InvalidInputError);
}

TEST_CASE("point cloud validation") {
  PointCloud cloud(3);
  CHECK_THROWS_AS(cloud.append(std::array{1.0, 2.0}), InvalidInputError);
  CHECK_THROWS_AS(cloud.append(std::array{1.0, 2.0, std::nan("")}),
                  InvalidInputError);
  CHECK_THROWS_AS(PointCloud(0), InvalidInputError);
  CHECK_THROWS_AS(PointCloud(3, std::vector<double>{1.0, 2.0}), InvalidInputError);
}
