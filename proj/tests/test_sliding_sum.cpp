#include <doctest.h>

#include <cstdint>
#include <vector>

#include "sft/signal.hpp"
#include "sft/sliding_sum.hpp"

using namespace sft;

namespace {

template <typename T>
Eigen::ArrayX<T> brute_sliding_sum(const Eigen::ArrayX<T>& f, std::int64_t window) {
  Eigen::ArrayX<T> out(f.size() - window + 1);
  for (std::int64_t n = 0; n < out.size(); ++n) {
    T acc{};
    for (std::int64_t k = 0; k < window; ++k) acc += f[n + k];
    out[n] = acc;
  }
  return out;
}

Eigen::ArrayX<std::int64_t> random_ints(std::int64_t n, std::uint64_t seed) {
  const Signal noise = make_test_signal(TestSignalKind::SeededNoise, n, seed);
  Eigen::ArrayX<std::int64_t> out(n);
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = static_cast<std::int64_t>(noise.samples[i] * 1000.0);
  return out;
}

}  // namespace

TEST_CASE("bit extraction") {
  CHECK(bit(5, 0) == 1);
  CHECK(bit(5, 1) == 0);
  CHECK(bit(5, 2) == 1);
  CHECK(bit(8, 3) == 1);
  CHECK(bit(8, 0) == 0);
  CHECK(bit(0, 7) == 0);
}

TEST_CASE("plan arithmetic") {
  for (int r = 0; r < 12; ++r) {
    const std::int64_t l = std::int64_t{1} << r;
    const SlidingSumPlan plan = SlidingSumPlan::make(1 << 13, l);
    CHECK(plan.rounds == r + 1);  // 2^{R-1} <= L < 2^R
  }
  CHECK(SlidingSumPlan::make(100, 3).rounds == 2);
  CHECK(SlidingSumPlan::make(100, 4).rounds == 3);
  CHECK(SlidingSumPlan::make(517, 100, SsVariant::Blocked8).padded_size == 4096);
  CHECK(SlidingSumPlan::make(512, 100, SsVariant::Blocked8).padded_size == 512);
  CHECK(SlidingSumPlan::make(100, 100).rounds == 7);
  CHECK_THROWS_AS(SlidingSumPlan::make(10, 0), std::invalid_argument);
  CHECK_THROWS_AS(SlidingSumPlan::make(10, 11), std::invalid_argument);
}

TEST_CASE("flat sliding sum basics") {
  Eigen::ArrayX<std::int64_t> f(5);
  f << 1, 2, 3, 4, 5;
  const Eigen::ArrayX<std::int64_t> h = sliding_sum_flat<std::int64_t>(f, 3);
  REQUIRE(h.size() == 3);
  CHECK(h[0] == 6);
  CHECK(h[1] == 9);
  CHECK(h[2] == 12);

  // impulse turns into a plateau of ones of length L
  Eigen::ArrayX<std::int64_t> impulse = Eigen::ArrayX<std::int64_t>::Zero(32);
  impulse[16] = 1;
  const Eigen::ArrayX<std::int64_t> plateau = sliding_sum_flat<std::int64_t>(impulse, 5);
  for (std::int64_t n = 0; n < plateau.size(); ++n)
    CHECK(plateau[n] == ((n <= 16 && 16 - n < 5) ? 1 : 0));

  // L = 1 is the identity; L = N is the total
  Eigen::ArrayX<std::int64_t> data = random_ints(40, 1);
  const auto ident = sliding_sum_flat<std::int64_t>(data, 1);
  for (std::int64_t n = 0; n < 40; ++n) CHECK(ident[n] == data[n]);
  const auto total = sliding_sum_flat<std::int64_t>(data, 40);
  CHECK(total.size() == 1);
  CHECK(total[0] == data.sum());
}

TEST_CASE("flat matches brute force on integers and doubles") {
  const Eigen::ArrayX<std::int64_t> ints = random_ints(1000, 2);
  const auto exact = brute_sliding_sum<std::int64_t>(ints, 137);
  const auto fast = sliding_sum_flat<std::int64_t>(ints, 137);
  REQUIRE(fast.size() == exact.size());
  for (std::int64_t n = 0; n < fast.size(); ++n) CHECK(fast[n] == exact[n]);

  const Signal noise = make_test_signal(TestSignalKind::SeededNoise, 1000, 3);
  const Eigen::ArrayXd reals = noise.samples;
  const auto dbrute = brute_sliding_sum<double>(reals, 137);
  const auto dfast = sliding_sum_flat<double>(reals, 137);
  const double scale = dbrute.abs().maxCoeff();
  CHECK((dfast - dbrute).abs().maxCoeff() < 1e-12 * scale);
}

TEST_CASE("blocked layout matches the rearrangement figure") {
  // one stage: element i sits at [i/8][i%8] (stride-8 groups along the rows)
  for (std::int64_t i = 0; i < 24; ++i) {
    const auto [row, col] = blocked8_layout(i, 1);
    CHECK(row == i / 8);
    CHECK(col == i % 8);
  }
  // two stages: low digits reverse
  const auto [row, col] = blocked8_layout(8 * 3 + 5, 2);  // digits d0=5, d1=3
  CHECK(row == 0);
  CHECK(col == 5 * 8 + 3);
}

TEST_CASE("blocked8 sums of eight ones") {
  Eigen::ArrayX<std::int64_t> ones = Eigen::ArrayX<std::int64_t>::Ones(64);
  RoundTrace trace;
  const auto h = sliding_sum_blocked8<std::int64_t>(ones, 8, 1, &trace);
  REQUIRE(h.size() == 57);
  for (std::int64_t n = 0; n < h.size(); ++n) CHECK(h[n] == 8);
  // driver loop runs once per base-8 digit of L
  CHECK(SlidingSumPlan::make(64, 8, SsVariant::Blocked8).blocked_stages() == 2);
  CHECK(trace.rounds.size() == 6);  // 3 rounds per stage
}

TEST_CASE("blocked8 equals flat exactly on integer data") {
  for (auto [n, l] : std::vector<std::pair<std::int64_t, std::int64_t>>{
           {517, 100}, {64, 8}, {100, 1}, {100, 100}, {4096, 513}, {9, 9}, {1, 1}, {2000, 77}}) {
    const Eigen::ArrayX<std::int64_t> data = random_ints(n, 1000 + n);
    const auto flat = sliding_sum_flat<std::int64_t>(data, l);
    const auto blocked = sliding_sum_blocked8<std::int64_t>(data, l);
    REQUIRE(flat.size() == blocked.size());
    for (std::int64_t i = 0; i < flat.size(); ++i) CHECK(flat[i] == blocked[i]);
  }
}

TEST_CASE("blocked8 equals flat on doubles") {
  const Signal noise = make_test_signal(TestSignalKind::SeededNoise, 700, 5);
  const auto flat = sliding_sum_flat<double>(noise.samples, 129);
  const auto blocked = sliding_sum_blocked8<double>(noise.samples, 129);
  const double scale = flat.abs().maxCoeff();
  CHECK((flat - blocked).abs().maxCoeff() < 1e-12 * scale);
}

TEST_CASE("results are independent of the worker count") {
  const Eigen::ArrayX<std::int64_t> data = random_ints(1500, 7);
  const auto flat1 = sliding_sum_flat<std::int64_t>(data, 200, 1);
  const auto flat2 = sliding_sum_flat<std::int64_t>(data, 200, 2);
  const auto flat8 = sliding_sum_flat<std::int64_t>(data, 200, 8);
  const auto blk1 = sliding_sum_blocked8<std::int64_t>(data, 200, 1);
  const auto blk2 = sliding_sum_blocked8<std::int64_t>(data, 200, 2);
  const auto blk8 = sliding_sum_blocked8<std::int64_t>(data, 200, 8);
  for (std::int64_t i = 0; i < flat1.size(); ++i) {
    CHECK(flat1[i] == flat2[i]);
    CHECK(flat1[i] == flat8[i]);
    CHECK(blk1[i] == blk2[i]);
    CHECK(blk1[i] == blk8[i]);
  }
}

TEST_CASE("trace counts equal the analytic cost model") {
  for (auto [n, l] : std::vector<std::pair<std::int64_t, std::int64_t>>{{1000, 137}, {64, 8}}) {
    const Eigen::ArrayX<std::int64_t> data = random_ints(n, 11);
    RoundTrace flat_trace;
    sliding_sum_flat<std::int64_t>(data, l, 1, &flat_trace);
    const CostReport flat_cost = cost_model(SlidingSumPlan::make(n, l, SsVariant::FlatDoubling));
    CHECK(flat_trace.total_adds() == flat_cost.total_adds);
    CHECK(static_cast<std::int64_t>(flat_trace.rounds.size()) == flat_cost.parallel_steps);

    RoundTrace blocked_trace;
    sliding_sum_blocked8<std::int64_t>(data, l, 1, &blocked_trace);
    const CostReport blocked_cost = cost_model(SlidingSumPlan::make(n, l, SsVariant::Blocked8));
    CHECK(blocked_trace.total_adds() == blocked_cost.total_adds);
    CHECK(static_cast<std::int64_t>(blocked_trace.rounds.size()) == blocked_cost.parallel_steps);
  }
}

TEST_CASE("method-level operation counts") {
  // multiplies: the windowed-sum route is independent of sigma, convolution is
  // linear in it
  const MethodOpCounts sft6 = sft_method_counts(102400, 6, 3 * 8192, 10496);
  const MethodOpCounts conv = conv_method_counts(102400, 8192.0, 10496);
  CHECK(sft6.mults == 7LL * 102400 * 6);
  CHECK(conv.mults == 102400LL * (6 * 8192 + 1));
  CHECK(conv.mults > 1000 * sft6.mults);

  const MethodOpCounts sft_small = sft_method_counts(102400, 6, 3 * 16, 10496);
  CHECK(sft_small.mults == sft6.mults);  // independent of the window
  const MethodOpCounts conv_double = conv_method_counts(102400, 32.0, 10496);
  const MethodOpCounts conv_half = conv_method_counts(102400, 16.0, 10496);
  CHECK(conv_double.mults > 19 * conv_half.mults / 10);
  CHECK(conv_double.mults < 21 * conv_half.mults / 10);
}
