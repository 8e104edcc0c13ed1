#pragma once

#include <cstdint>
#include <optional>

#include "degen/geometry.hpp"
#include "degen/rng.hpp"

namespace degen {

enum class CountMode { exhaustive, sampled };

/// Outcome of a degeneracy count. Exhaustive counts are exact (the
/// confidence interval collapses onto the count); sampled counts carry a
/// 95% Wilson interval scaled to subset space.
struct CountResult {
  double degenerate_count = 0.0;
  double total_subsets = 0.0;
  CountMode mode = CountMode::exhaustive;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t samples_used = 0;
};

/// Upper bounds on N for exhaustive enumeration, sized for desk-scale
/// runtimes (~2e7 triples / ~8.6e6 quadruples).
struct ExhaustiveCaps {
  std::size_t collinear = 500;
  std::size_t coplanar = 120;
};

/// Parameter echo attached to comparison reports.
struct RunParamsEcho {
  std::uint64_t n_points = 0;
  std::uint64_t dim = 3;
  std::uint64_t subset_size = 3;
  double epsilon = 0.0;
  std::optional<double> grid_step;
  std::optional<double> noise_sigma;
  std::uint64_t seed = 0;
};

/// Analytic-vs-empirical comparison. `ratio_defined` is false when the
/// analytic expectation is zero; `analytic_outside_ci` flags disagreement.
struct ComparisonReport {
  double analytic_expectation = 0.0;
  CountResult empirical;
  double ratio = 0.0;
  bool ratio_defined = false;
  bool analytic_outside_ci = false;
  RunParamsEcho params;
};

/// Exact count of unordered triples with collinearity residual < epsilon.
/// Deterministic for any thread count. Throws CapExceededError above the cap.
CountResult count_collinear_exhaustive(const PointCloud& cloud, double epsilon,
                                       const ExhaustiveCaps& caps = {},
                                       unsigned threads = 1);

/// Exact count of unordered quadruples with coplanarity residual < epsilon.
CountResult count_coplanar_exhaustive(const PointCloud& cloud, double epsilon,
                                      const ExhaustiveCaps& caps = {},
                                      unsigned threads = 1);

/// Unbiased estimate of the degenerate k-subset count from num_samples
/// uniform subset draws (with replacement across draws): the hit fraction
/// scaled by C(N, k), with a 95% Wilson interval. k must be 3 or 4.
CountResult count_degenerate_sampled(const PointCloud& cloud, unsigned k,
                                     double epsilon, std::uint64_t num_samples,
                                     const SeededRng& rng, unsigned threads = 1);

/// Assembles the comparison report for one analytic/empirical pair.
ComparisonReport compare_analytic_empirical(const RunParamsEcho& params,
                                            double analytic,
                                            const CountResult& empirical);

}  // namespace degen
