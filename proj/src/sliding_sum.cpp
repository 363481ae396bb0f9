#include "sft/sliding_sum.hpp"

#include <cmath>

namespace sft {

CostReport cost_model(const SlidingSumPlan& plan) {
  CostReport report;
  if (plan.variant == SsVariant::FlatDoubling) {
    report.parallel_steps = plan.rounds;
    report.outer_iterations = 1;
    for (int r = 0; r < plan.rounds; ++r) {
      const int fold = bit(static_cast<std::uint64_t>(plan.window), static_cast<unsigned>(r));
      report.total_adds += plan.input_size * (1 + fold);
    }
  } else {
    report.outer_iterations = plan.blocked_stages();
    report.parallel_steps = 3 * report.outer_iterations;
    std::int64_t rows = plan.padded_size;
    std::int64_t cols = 1;
    std::int64_t rest = plan.window;
    while (rest > 0) {
      const std::int64_t block_count = ((rows + 63) / 64) * cols;
      for (int r = 0; r < 3; ++r) {
        const int fold = bit(static_cast<std::uint64_t>(rest), static_cast<unsigned>(r));
        const std::int64_t active = static_cast<std::int64_t>(16 - (1 << r)) * 8 * block_count;
        report.total_adds += active * (1 + fold);
      }
      rows /= 8;
      cols *= 8;
      rest /= 8;
    }
  }
  report.total_mults = 0;
  if (plan.core_budget >= plan.input_size)
    report.predicted_regime = "O(log2 L) parallel time (M >= N)";
  else
    report.predicted_regime = "O(N log2 L / M) parallel time (M < N)";
  return report;
}

MethodOpCounts sft_method_counts(std::int64_t n, int orders, std::int64_t half_width,
                                 std::int64_t core_budget) {
  MethodOpCounts counts;
  counts.mults = 7 * n * orders;
  counts.adds = n * orders * (2 * half_width + 1);
  if (core_budget >= n)
    counts.regime = "O(P log2 K) time (M >= N)";
  else
    counts.regime = "O(N P log2 K / M) time (M < N)";
  return counts;
}

MethodOpCounts conv_method_counts(std::int64_t n, double sigma, std::int64_t core_budget) {
  MethodOpCounts counts;
  const std::int64_t window = static_cast<std::int64_t>(std::llround(6.0 * sigma)) + 1;
  counts.mults = n * window;
  counts.adds = n * window;
  if (core_budget >= counts.adds)
    counts.regime = "O(log2 sigma) time (M >= N(6 sigma + 1))";
  else
    counts.regime = "O(N sigma log2 sigma / M) time";
  return counts;
}

}  // namespace sft
