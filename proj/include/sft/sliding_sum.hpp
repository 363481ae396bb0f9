#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sft/parallel.hpp"

namespace sft {

/// r-th bit of m (bit 0 least significant): floor(m / 2^r) mod 2.
inline int bit(std::uint64_t m, unsigned r) {
  return static_cast<int>((m >> r) & 1ULL);
}

enum class SsVariant { FlatDoubling, Blocked8 };

/// Round/stage schedule for the data-parallel sliding sum
/// h[n] = sum_{k=0}^{L-1} f[n+k], n in [0, N-L].
struct SlidingSumPlan {
  std::int64_t input_size = 0;   // N
  std::int64_t window = 0;       // L
  int rounds = 0;                // R with 2^{R-1} <= L < 2^R
  SsVariant variant = SsVariant::FlatDoubling;
  std::int64_t core_budget = 1;  // M, for the cost model's regime analysis
  std::int64_t padded_size = 0;  // N8 = smallest power of 8 >= N (Blocked8)
  int block_rows = 16;
  int block_cols = 8;

  static SlidingSumPlan make(std::int64_t n, std::int64_t window,
                             SsVariant variant = SsVariant::FlatDoubling,
                             std::int64_t core_budget = 1) {
    if (n < 1) throw std::invalid_argument("SlidingSumPlan: N must be >= 1");
    if (window < 1 || window > n)
      throw std::invalid_argument("SlidingSumPlan: need 1 <= L <= N");
    if (core_budget < 1) throw std::invalid_argument("SlidingSumPlan: M must be >= 1");
    SlidingSumPlan plan;
    plan.input_size = n;
    plan.window = window;
    plan.variant = variant;
    plan.core_budget = core_budget;
    plan.rounds = 1;
    while ((std::int64_t{1} << plan.rounds) <= window) ++plan.rounds;
    // pad to a power of 8 that also leaves >= 8 rows for every driver stage
    // (the last stage still folds the top base-8 digit of L)
    std::int64_t stage_floor = 1;
    for (int t = 0; t < plan.blocked_stages_for(window); ++t) stage_floor *= 8;
    plan.padded_size = 1;
    while (plan.padded_size < n || plan.padded_size < stage_floor) plan.padded_size *= 8;
    return plan;
  }

  /// Number of driver-loop iterations of the blocked variant: base-8 digits of L.
  int blocked_stages() const { return blocked_stages_for(window); }

  static int blocked_stages_for(std::int64_t window) {
    int stages = 0;
    for (std::int64_t rest = window; rest > 0; rest /= 8) ++stages;
    return stages;
  }
};

struct RoundRecord {
  int round = 0;  // global round counter
  int stage = 0;  // blocked8 driver iteration (0 for flat)
  int r = 0;      // doubling exponent within the stage
  int bit = 0;    // B(L, r) for the stage-local L
  std::int64_t active = 0;
  std::int64_t adds = 0;
};

struct RoundTrace {
  std::vector<RoundRecord> rounds;

  std::int64_t total_adds() const {
    std::int64_t total = 0;
    for (const auto& rec : rounds) total += rec.adds;
    return total;
  }
};

/// Bulk-synchronous doubling rounds over the whole array (Algorithm-1 style):
/// round r computes g'[n] = g[n] + g[n+2^r] and, when B(L,r) = 1, folds
/// h'[n] = g[n] + h[n+2^r], each as a read-then-write step over double
/// buffers. Deterministic for any worker count.
template <typename T>
Eigen::ArrayX<T> sliding_sum_flat(const Eigen::Ref<const Eigen::ArrayX<T>>& f,
                                  std::int64_t window, int workers = 1,
                                  RoundTrace* trace = nullptr) {
  const std::int64_t n = f.size();
  const SlidingSumPlan plan = SlidingSumPlan::make(n, window, SsVariant::FlatDoubling);

  Eigen::ArrayX<T> g = f;
  Eigen::ArrayX<T> h = Eigen::ArrayX<T>::Zero(n);
  Eigen::ArrayX<T> g_next(n), h_next(n);
  for (int r = 0; r < plan.rounds; ++r) {
    const std::int64_t shift = std::int64_t{1} << r;
    const int fold = bit(static_cast<std::uint64_t>(window), static_cast<unsigned>(r));
    // every position updates; reads past the end contribute 0 (the padded-out
    // work arrays of the blocked variant behave identically)
    bulk_parallel_for(0, n, workers, [&](std::int64_t a, std::int64_t b) {
      for (std::int64_t i = a; i < b; ++i) {
        const T g_in = i + shift < n ? g[i + shift] : T{};
        g_next[i] = g[i] + g_in;
        if (fold) {
          const T h_in = i + shift < n ? h[i + shift] : T{};
          h_next[i] = g[i] + h_in;
        } else {
          h_next[i] = h[i];
        }
      }
    });
    g.swap(g_next);
    h.swap(h_next);
    if (trace) trace->rounds.push_back({r, 0, r, fold, n, n * (1 + fold)});
  }
  return h.head(n - window + 1);
}

/// Where original index i lives in the blocked layout after `stages` driver
/// iterations: first index i / 8^stages, second index the low base-8 digits of
/// i packed in reversed significance (after one stage, element i sits at
/// [i/8][i%8], so stride-8 neighbors are adjacent along the first index).
inline std::pair<std::int64_t, std::int64_t> blocked8_layout(std::int64_t index, int stages) {
  std::int64_t div = 1;
  for (int t = 0; t < stages; ++t) div *= 8;
  std::int64_t rem = index % div;
  std::int64_t col = 0;
  for (int t = 0; t < stages; ++t) {
    col = col * 8 + rem % 8;
    rem /= 8;
  }
  return {index / div, col};
}

/// Blocked shared-memory simulation: each (16, 8) tile covers one column of 72
/// consecutive rows (64 owned + 8 halo); a 16-wide row computes 8 window sums
/// over up-to-8 consecutive elements in three doubling rounds, then writes the
/// low half back transposed so that stride-8 neighbors become adjacent for the
/// next driver stage. Executes the same addition trees as the flat variant.
template <typename T>
Eigen::ArrayX<T> sliding_sum_blocked8(const Eigen::Ref<const Eigen::ArrayX<T>>& f,
                                      std::int64_t window, int workers = 1,
                                      RoundTrace* trace = nullptr) {
  const std::int64_t n = f.size();
  const SlidingSumPlan plan = SlidingSumPlan::make(n, window, SsVariant::Blocked8);
  const std::int64_t padded = plan.padded_size;

  std::vector<T> g1(padded, T{}), h1(padded, T{}), g2(padded, T{}), h2(padded, T{});
  for (std::int64_t i = 0; i < n; ++i) g1[i] = f[i];

  std::int64_t rest = window;
  int stage = 0;
  int global_round = 0;
  std::int64_t rows = padded;  // current first-dimension length
  std::int64_t cols = 1;
  while (rest > 0) {
    const std::int64_t out_rows = rows / 8;
    const std::int64_t blocks_x = (rows + 63) / 64;
    const std::int64_t block_count = blocks_x * cols;

    bulk_parallel_for(0, block_count, workers, [&](std::int64_t a, std::int64_t b) {
      T s_tile[16][8], t_tile[16][8], s_new[16][8], t_new[16][8];
      for (std::int64_t idx = a; idx < b; ++idx) {
        const std::int64_t block_x = idx / cols;
        const std::int64_t col = idx % cols;
        // load: row = x_T + 8 y_T + 64 x_B, second index = y_B
        for (int xt = 0; xt < 16; ++xt)
          for (int yt = 0; yt < 8; ++yt) {
            const std::int64_t row = xt + 8 * yt + 64 * block_x;
            const bool in = row < rows;
            s_tile[xt][yt] = in ? g1[row * cols + col] : T{};
            t_tile[xt][yt] = in ? h1[row * cols + col] : T{};
          }
        for (int r = 0; r < 3; ++r) {
          const int fold = bit(static_cast<std::uint64_t>(rest), static_cast<unsigned>(r));
          const int reach = 1 << r;
          for (int xt = 0; xt < 16; ++xt)
            for (int yt = 0; yt < 8; ++yt) {
              if (xt < 16 - reach) {
                t_new[xt][yt] =
                    fold ? T(s_tile[xt][yt] + t_tile[xt + reach][yt]) : t_tile[xt][yt];
                s_new[xt][yt] = s_tile[xt][yt] + s_tile[xt + reach][yt];
              } else {
                t_new[xt][yt] = t_tile[xt][yt];
                s_new[xt][yt] = s_tile[xt][yt];
              }
            }
          for (int xt = 0; xt < 16; ++xt)
            for (int yt = 0; yt < 8; ++yt) {
              s_tile[xt][yt] = s_new[xt][yt];
              t_tile[xt][yt] = t_new[xt][yt];
            }
        }
        // writeback with thread indices exchanged for contiguous access:
        // g2[y_T + 8 x_B][x_T + 8 y_B]
        for (int xt = 0; xt < 8; ++xt)
          for (int yt = 0; yt < 8; ++yt) {
            const std::int64_t out_row = yt + 8 * block_x;
            if (out_row >= out_rows) continue;
            const std::int64_t out_col = xt + 8 * col;
            g2[out_row * (cols * 8) + out_col] = s_tile[xt][yt];
            h2[out_row * (cols * 8) + out_col] = t_tile[xt][yt];
          }
      }
    });

    if (trace) {
      for (int r = 0; r < 3; ++r) {
        const int fold = bit(static_cast<std::uint64_t>(rest), static_cast<unsigned>(r));
        const std::int64_t active = static_cast<std::int64_t>(16 - (1 << r)) * 8 * block_count;
        trace->rounds.push_back({global_round + r, stage, r, fold, active, active * (1 + fold)});
      }
    }
    global_round += 3;
    g1.swap(g2);
    h1.swap(h2);
    rows = out_rows;
    cols *= 8;
    rest /= 8;
    ++stage;
  }

  // Restore original order through the layout map.
  Eigen::ArrayX<T> out(n - window + 1);
  for (std::int64_t i = 0; i < out.size(); ++i) {
    const auto [row, col] = blocked8_layout(i, stage);
    out[i] = h1[row * cols + col];
  }
  return out;
}

struct CostReport {
  std::int64_t parallel_steps = 0;    // barrier-separated bulk rounds
  int outer_iterations = 0;           // blocked8 driver-loop count (1 for flat)
  std::int64_t total_adds = 0;
  std::int64_t total_mults = 0;       // sliding sum itself multiplies nothing
  std::string predicted_regime;
};

/// Exact operation counts for a plan plus the asymptotic regime given the
/// core budget M.
CostReport cost_model(const SlidingSumPlan& plan);

/// Method-level operation counts used by the benchmark comparisons: an
/// SFT-based transform of P+1 orders costs about 7NP real multiplies and
/// NP(2K+1) additions; truncated convolution costs about N(6 sigma + 1) of
/// each.
struct MethodOpCounts {
  std::int64_t mults = 0;
  std::int64_t adds = 0;
  std::string regime;
};

MethodOpCounts sft_method_counts(std::int64_t n, int orders, std::int64_t half_width,
                                 std::int64_t core_budget);
MethodOpCounts conv_method_counts(std::int64_t n, double sigma, std::int64_t core_budget);

}  // namespace sft
