#include "degen/analytics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace degen {

namespace {

double clamp_probability(double p) {
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": probability " << p << " outside [0, 1]";
    throw InvalidInputError(msg.str());
  }
}

// N^e by repeated multiplication; exact whenever every partial product is
// an exactly representable integer, which keeps the growth-law ratios exact.
double int_pow(double base, std::uint64_t e) {
  double acc = 1.0;
  for (std::uint64_t i = 0; i < e; ++i) acc *= base;
  return acc;
}

double factorial(std::uint64_t k) {
  double acc = 1.0;
  for (std::uint64_t i = 2; i <= k; ++i) acc *= static_cast<double>(i);
  return acc;
}

}  // namespace

void RandomModelParams::validate() const {
  if (dim < 1) throw InvalidInputError("RandomModelParams: dim must be >= 1");
  if (subset_size < 1 || subset_size > n_points) {
    throw InvalidInputError("RandomModelParams: need 1 <= k <= N");
  }
  if (!(std::isfinite(epsilon) && epsilon >= 0.0)) {
    throw InvalidInputError("RandomModelParams: epsilon must be finite and >= 0");
  }
  if (!(std::isfinite(proportionality) && proportionality > 0.0)) {
    throw InvalidInputError("RandomModelParams: proportionality must be > 0");
  }
}

void StructuredModelParams::validate() const {
  if (!(std::isfinite(plane_area) && plane_area >= 0.0)) {
    throw InvalidInputError("StructuredModelParams: plane_area must be >= 0");
  }
  if (!(std::isfinite(shell_thickness) && shell_thickness >= 0.0)) {
    throw InvalidInputError("StructuredModelParams: shell_thickness must be >= 0");
  }
  if (!(std::isfinite(cyl_radius) && cyl_radius > 0.0) ||
      !(std::isfinite(cyl_height) && cyl_height > 0.0)) {
    throw InvalidInputError("StructuredModelParams: cylinder R, h must be > 0");
  }
  if (!(std::isfinite(sphere_radius) && sphere_radius > 0.0)) {
    throw InvalidInputError("StructuredModelParams: sphere_radius must be > 0");
  }
  if (dim < 1) throw InvalidInputError("StructuredModelParams: dim must be >= 1");
}

double StructuredModelParams::total_volume() const {
  return std::numbers::pi * cyl_radius * cyl_radius * cyl_height;
}

AmplificationFactors::AmplificationFactors(double col, double cop)
    : collinear(col), coplanar(cop) {
  if (!(std::isfinite(col) && col > 0.0) || !(std::isfinite(cop) && cop > 0.0)) {
    throw InvalidInputError("AmplificationFactors: factors must be finite and > 0");
  }
}

double single_subset_probability(const RandomModelParams& params) {
  params.validate();
  if (params.epsilon == 0.0) return 0.0;
  const double n = static_cast<double>(params.n_points);
  const double exponent =
      static_cast<double>(params.dim) - static_cast<double>(params.subset_size);
  return clamp_probability(params.proportionality * params.epsilon /
                           std::pow(n, exponent));
}

double expected_degenerate_subsets(const RandomModelParams& params) {
  params.validate();
  if (params.epsilon == 0.0) return 0.0;
  const double n = static_cast<double>(params.n_points);
  const double d = static_cast<double>(params.dim);
  const double k = static_cast<double>(params.subset_size);
  const double exponent = d - k + 2.0;

  if (exponent >= 0.0 && exponent <= 64.0 && params.subset_size <= 170) {
    const double direct = params.epsilon *
                          int_pow(n, static_cast<std::uint64_t>(exponent)) /
                          factorial(params.subset_size);
    if (std::isfinite(direct)) return direct;
  }
  return std::exp(std::log(params.epsilon) + exponent * std::log(n) -
                  std::lgamma(k + 1.0));
}

double expected_collinear(std::uint64_t n, double epsilon) {
  if (n < 3) throw InvalidInputError("expected_collinear: need N >= 3");
  return expected_degenerate_subsets(
      {.n_points = n, .dim = 3, .subset_size = 3, .epsilon = epsilon});
}

double expected_coplanar(std::uint64_t n, double epsilon) {
  if (n < 4) throw InvalidInputError("expected_coplanar: need N >= 4");
  return expected_degenerate_subsets(
      {.n_points = n, .dim = 3, .subset_size = 4, .epsilon = epsilon});
}

double subset_count(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw InvalidInputError("subset_count: need k <= n");
  k = std::min(k, n - k);
  // Multiplicative form C(n-k+i, i); every intermediate value is an integer,
  // so the evaluation is exact while products stay below 2^53.
  double acc = 1.0;
  bool exact = true;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const double num = acc * static_cast<double>(n - k + i);
    if (num > 0x1.0p53) {
      exact = false;
      break;
    }
    acc = num / static_cast<double>(i);
  }
  if (exact) return acc;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::exp(std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) -
                  std::lgamma(nn - kk + 1.0));
}

double subset_count_asymptotic(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw InvalidInputError("subset_count_asymptotic: need k <= n");
  if (k <= 170) {
    const double direct = int_pow(static_cast<double>(n), k) / factorial(k);
    if (std::isfinite(direct)) return direct;
  }
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return std::exp(kk * std::log(nn) - std::lgamma(kk + 1.0));
}

double overall_probability(std::span<const std::pair<double, double>> p_mult) {
  double log_survival = 0.0;
  for (const auto& [p, mult] : p_mult) {
    require_probability(p, "overall_probability");
    if (!(std::isfinite(mult) && mult >= 0.0)) {
      throw InvalidInputError("overall_probability: multiplicity must be >= 0");
    }
    if (mult == 0.0) continue;
    if (p == 1.0) return 1.0;
    log_survival += mult * std::log1p(-p);
  }
  return -std::expm1(log_survival);
}

double overall_probability_exp_approx(double sum_pk) {
  if (!(sum_pk >= 0.0)) {
    throw InvalidInputError("overall_probability_exp_approx: sum must be >= 0");
  }
  return -std::expm1(-sum_pk);
}

double structured_coplanar_probability(const StructuredModelParams& params) {
  params.validate();
  return clamp_probability(params.plane_area * params.shell_thickness /
                           params.total_volume());
}

double near_spherical_probability(const StructuredModelParams& params) {
  params.validate();
  const double d = static_cast<double>(params.dim);
  const double surface_area = d * std::pow(params.sphere_radius, d - 1.0);
  return clamp_probability(params.shell_thickness * surface_area /
                           params.total_volume());
}

double composite_degeneracy_probability(std::span<const double> factors) {
  double log_survival = 0.0;
  for (double p : factors) {
    require_probability(p, "composite_degeneracy_probability");
    if (p == 1.0) return 1.0;
    log_survival += std::log1p(-p);
  }
  return -std::expm1(log_survival);
}

std::pair<double, double> amplified_expected_counts(
    double base_collinear, double base_coplanar,
    const AmplificationFactors& amp) {
  if (!(base_collinear >= 0.0) || !(base_coplanar >= 0.0)) {
    throw InvalidInputError("amplified_expected_counts: bases must be >= 0");
  }
  return {amp.collinear * base_collinear, amp.coplanar * base_coplanar};
}

ExpectationTable build_expectation_table(std::span<const std::uint64_t> n_values,
                                         double eps_collinear,
                                         double eps_coplanar,
                                         const AmplificationFactors& amp) {
  ExpectationTable table{eps_collinear, eps_coplanar, amp, {}};
  table.rows.reserve(n_values.size());
  for (std::uint64_t n : n_values) {
    const double col = expected_collinear(n, eps_collinear);
    const double cop = expected_coplanar(n, eps_coplanar);
    const auto [col_q, cop_q] = amplified_expected_counts(col, cop, amp);
    table.rows.push_back({n, col, col_q, cop, cop_q});
  }
  return table;
}

}  // namespace degen
