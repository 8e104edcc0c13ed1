#include "degen/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "degen/analytics.hpp"

namespace degen {

namespace {

constexpr double kZ95 = 1.959963984540054;  // Phi^-1(0.975)

void require_dim3(const PointCloud& cloud, const char* what) {
  if (cloud.dim() != 3) {
    std::ostringstream msg;
    msg << what << ": cloud dimension must be 3, got " << cloud.dim();
    throw InvalidInputError(msg.str());
  }
}

unsigned effective_threads(unsigned requested, std::size_t work_items) {
  if (requested == 0) requested = 1;
  return static_cast<unsigned>(
      std::min<std::size_t>(requested, std::max<std::size_t>(work_items, 1)));
}

// Runs fn(worker_index) on `threads` workers and sums their integer hit
// counts; the total is independent of the partitioning.
template <typename Fn>
std::uint64_t parallel_tally(unsigned threads, Fn&& fn) {
  if (threads <= 1) return fn(0u);
  std::vector<std::uint64_t> hits(threads, 0);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&hits, &fn, w] { hits[w] = fn(w); });
  }
  for (auto& t : pool) t.join();
  std::uint64_t total = 0;
  for (std::uint64_t h : hits) total += h;
  return total;
}

CountResult exhaustive_result(std::uint64_t count, double total_subsets) {
  CountResult res;
  res.degenerate_count = static_cast<double>(count);
  res.total_subsets = total_subsets;
  res.mode = CountMode::exhaustive;
  res.ci_low = res.degenerate_count;
  res.ci_high = res.degenerate_count;
  res.samples_used = 0;
  return res;
}

struct WilsonInterval {
  double low;
  double high;
};

WilsonInterval wilson95(std::uint64_t hits, std::uint64_t n) {
  const double nn = static_cast<double>(n);
  const double p_hat = static_cast<double>(hits) / nn;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p_hat + z2 / (2.0 * nn)) / denom;
  const double half =
      kZ95 * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

}  // namespace

CountResult count_collinear_exhaustive(const PointCloud& cloud, double epsilon,
                                       const ExhaustiveCaps& caps,
                                       unsigned threads) {
  require_dim3(cloud, "count_collinear_exhaustive");
  const std::size_t n = cloud.size();
  if (n > caps.collinear) {
    std::ostringstream msg;
    msg << "count_collinear_exhaustive: N=" << n << " exceeds the exhaustive cap "
        << caps.collinear << "; use sampled mode";
    throw CapExceededError(msg.str());
  }
  const double* base = cloud.flat().data();
  threads = effective_threads(threads, n);
  const std::uint64_t count = parallel_tally(threads, [&](unsigned w) {
    std::uint64_t local = 0;
    for (std::size_t i = w; i + 2 < n; i += threads) {
      const double* pi = base + 3 * i;
      for (std::size_t j = i + 1; j + 1 < n; ++j) {
        const double* pj = base + 3 * j;
        for (std::size_t k = j + 1; k < n; ++k) {
          if (detail::collinearity_residual_raw(pi, pj, base + 3 * k) < epsilon) {
            ++local;
          }
        }
      }
    }
    return local;
  });
  return exhaustive_result(count, n >= 3 ? subset_count(n, 3) : 0.0);
}

CountResult count_coplanar_exhaustive(const PointCloud& cloud, double epsilon,
                                      const ExhaustiveCaps& caps,
                                      unsigned threads) {
  require_dim3(cloud, "count_coplanar_exhaustive");
  const std::size_t n = cloud.size();
  if (n > caps.coplanar) {
    std::ostringstream msg;
    msg << "count_coplanar_exhaustive: N=" << n << " exceeds the exhaustive cap "
        << caps.coplanar << "; use sampled mode";
    throw CapExceededError(msg.str());
  }
  const double* base = cloud.flat().data();
  threads = effective_threads(threads, n);
  const std::uint64_t count = parallel_tally(threads, [&](unsigned w) {
    std::uint64_t local = 0;
    for (std::size_t i = w; i + 3 < n; i += threads) {
      const double* pi = base + 3 * i;
      for (std::size_t j = i + 1; j + 2 < n; ++j) {
        const double* pj = base + 3 * j;
        for (std::size_t k = j + 1; k + 1 < n; ++k) {
          const double* pk = base + 3 * k;
          for (std::size_t l = k + 1; l < n; ++l) {
            if (detail::coplanarity_residual_raw(pi, pj, pk, base + 3 * l) <
                epsilon) {
              ++local;
            }
          }
        }
      }
    }
    return local;
  });
  return exhaustive_result(count, n >= 4 ? subset_count(n, 4) : 0.0);
}

CountResult count_degenerate_sampled(const PointCloud& cloud, unsigned k,
                                     double epsilon, std::uint64_t num_samples,
                                     const SeededRng& rng, unsigned threads) {
  require_dim3(cloud, "count_degenerate_sampled");
  if (k != 3 && k != 4) {
    throw InvalidInputError("count_degenerate_sampled: subset size must be 3 or 4");
  }
  const std::size_t n = cloud.size();
  if (n < k) {
    throw InvalidInputError("count_degenerate_sampled: fewer points than subset size");
  }
  if (num_samples < 1) {
    throw InvalidInputError("count_degenerate_sampled: need at least one sample");
  }

  const double* base = cloud.flat().data();
  threads = effective_threads(threads, num_samples);
  // Sample s always uses substream(seed, s): identical results for any
  // thread count.
  const std::uint64_t hits = parallel_tally(threads, [&](unsigned w) {
    std::size_t idx[4];
    std::uint64_t local = 0;
    for (std::uint64_t s = w; s < num_samples; s += threads) {
      SeededRng draw = rng.substream("subset-sample", s);
      for (unsigned a = 0; a < k; ++a) {
        bool fresh;
        do {
          idx[a] = std::min<std::size_t>(
              n - 1, static_cast<std::size_t>(draw.uniform01() *
                                              static_cast<double>(n)));
          fresh = true;
          for (unsigned b = 0; b < a; ++b) fresh &= (idx[a] != idx[b]);
        } while (!fresh);
      }
      const double residual =
          (k == 3) ? detail::collinearity_residual_raw(
                         base + 3 * idx[0], base + 3 * idx[1], base + 3 * idx[2])
                   : detail::coplanarity_residual_raw(
                         base + 3 * idx[0], base + 3 * idx[1], base + 3 * idx[2],
                         base + 3 * idx[3]);
      if (residual < epsilon) ++local;
    }
    return local;
  });

  const double scale = subset_count(n, k);
  const auto [lo, hi] = wilson95(hits, num_samples);
  CountResult res;
  res.degenerate_count =
      static_cast<double>(hits) / static_cast<double>(num_samples) * scale;
  res.total_subsets = scale;
  res.mode = CountMode::sampled;
  res.ci_low = lo * scale;
  res.ci_high = hi * scale;
  res.samples_used = num_samples;
  return res;
}

ComparisonReport compare_analytic_empirical(const RunParamsEcho& params,
                                            double analytic,
                                            const CountResult& empirical) {
  if (!(analytic >= 0.0)) {
    throw InvalidInputError("compare_analytic_empirical: analytic must be >= 0");
  }
  ComparisonReport report;
  report.analytic_expectation = analytic;
  report.empirical = empirical;
  report.params = params;
  report.ratio_defined = analytic > 0.0;
  report.ratio = report.ratio_defined ? empirical.degenerate_count / analytic : 0.0;
  report.analytic_outside_ci =
      analytic < empirical.ci_low || analytic > empirical.ci_high;
  return report;
}

}  // namespace degen
