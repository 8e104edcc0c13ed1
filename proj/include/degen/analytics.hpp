#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "degen/errors.hpp"

namespace degen {

/// Parameters of the uniform-random-data degeneracy model.
struct RandomModelParams {
  std::uint64_t n_points = 0;  ///< N
  std::uint64_t dim = 3;       ///< d
  std::uint64_t subset_size = 3;  ///< k
  double epsilon = 0.0;        ///< residual tolerance
  double proportionality = 1.0;  ///< C (never fixed by the model; default 1)

  void validate() const;
};

/// Parameters of the structured-environment model: a cylindrical sensing
/// volume (radius R, height h) containing a reflective plane of area
/// A_plane and a sphere of radius r, with shell tolerance delta.
struct StructuredModelParams {
  double plane_area = 0.0;   ///< A_plane (m^2)
  double shell_thickness = 0.0;  ///< delta (m)
  double cyl_radius = 1.0;   ///< R (m)
  double cyl_height = 1.0;   ///< h (m)
  double sphere_radius = 1.0;  ///< r (m)
  std::uint64_t dim = 3;     ///< d

  void validate() const;
  double total_volume() const;  ///< pi R^2 h
};

/// Postulated multipliers scaling expected degeneracy counts of quantized
/// data relative to random data.
struct AmplificationFactors {
  double collinear = 10.0;
  double coplanar = 3.0;

  AmplificationFactors() = default;
  AmplificationFactors(double col, double cop);
};

/// One row of the random-vs-quantized expectation table.
struct ExpectationRow {
  std::uint64_t n_points;
  double collinear_random;
  double collinear_quantized;
  double coplanar_random;
  double coplanar_quantized;
};

struct ExpectationTable {
  double eps_collinear;
  double eps_coplanar;
  AmplificationFactors amplification;
  std::vector<ExpectationRow> rows;
};

/// P_k(degenerate) = min(1, C * eps / N^(d-k)).
double single_subset_probability(const RandomModelParams& params);

/// Expected number of degenerate k-subsets among N uniform points,
/// eps * N^(d-k+2) / k!. The exponent is the codimension of the minimal
/// degenerate flat (2 for collinear triples, 1 for coplanar quadruples in
/// R^3), matching the model's evaluated collinear/coplanar cases. Falls
/// back to log-space evaluation when the direct form over/underflows.
double expected_degenerate_subsets(const RandomModelParams& params);

/// eps * N^2 / 6 == expected_degenerate_subsets at k=3, d=3 (bit-identical).
double expected_collinear(std::uint64_t n, double epsilon);

/// eps * N / 24 == expected_degenerate_subsets at k=4, d=3 (bit-identical).
double expected_coplanar(std::uint64_t n, double epsilon);

/// Exact binomial coefficient C(n, k) as a double; switches to a
/// log-gamma evaluation once exact integer arithmetic would overflow.
double subset_count(std::uint64_t n, std::uint64_t k);

/// Large-N asymptotic form N^k / k!.
double subset_count_asymptotic(std::uint64_t n, std::uint64_t k);

/// P(at least one degenerate subset) = 1 - prod (1 - p_i)^(m_i), evaluated
/// as 1 - exp(sum m_i * log1p(-p_i)) so huge multiplicities cannot
/// underflow the product.
double overall_probability(std::span<const std::pair<double, double>> p_mult);

/// First-order form 1 - exp(-sum_pk).
double overall_probability_exp_approx(double sum_pk);

/// P_k(coplanar) = min(1, A_plane * delta / (pi R^2 h)).
double structured_coplanar_probability(const StructuredModelParams& params);

/// P_k(nearly spherical) = min(1, delta * d * r^(d-1) / (pi R^2 h)).
double near_spherical_probability(const StructuredModelParams& params);

/// 1 - prod (1 - P_i) over individual factor probabilities.
double composite_degeneracy_probability(std::span<const double> factors);

/// (A_collinear * base_collinear, A_coplanar * base_coplanar).
std::pair<double, double> amplified_expected_counts(
    double base_collinear, double base_coplanar,
    const AmplificationFactors& amp);

/// Evaluates the four-column expectation table for each N.
ExpectationTable build_expectation_table(std::span<const std::uint64_t> n_values,
                                         double eps_collinear,
                                         double eps_coplanar,
                                         const AmplificationFactors& amp);

}  // namespace degen
