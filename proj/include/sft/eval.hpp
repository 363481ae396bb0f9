#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sft/metrics.hpp"
#include "sft/transforms.hpp"

namespace sft {

/// One kernel-accuracy measurement: which transform/method/variant, at which
/// parameters, evaluated over which interval.
struct RmseReport {
  std::string abbreviation;
  std::string transform;  // G, GD, GDD, Morlet
  std::string method;     // direct / multiply / truncated
  std::string variant;    // SFT / ASFT
  int max_order = 0;      // P, P_D or P_M
  int ps = 0;
  double xi = 0.0;
  int half_width = 0;  // K
  double beta = 0.0;
  double sigma = 0.0;
  int n0 = 0;
  std::string interval;
  double rmse_percent = 0.0;
};

/// CSV with the columns (abbreviation, P, P_S, xi, K, beta, rmse_percent).
void write_rmse_csv(std::ostream& os, const std::vector<RmseReport>& reports);

/// Relative RMSE of the 3-sigma-truncated Gaussian against the full Gaussian
/// over [-3K, 3K] with sigma = K/3 (the classic ~0.46% figure).
double truncation_baseline_rmse(int half_width = 256);

/// Gaussian-smoothing accuracy table at fixed window budget K=256 (ASFT rows
/// use n0=10): for each P in 2..6 and each variant, (sigma, beta) are tuned
/// jointly to minimize e(G); e(G), e(G_D), e(G_DD) are reported at the tuned
/// pair, the derivative fits reusing it.
std::vector<RmseReport> table1_experiment(int half_width = 256, int asft_n0 = 10);

/// Per-xi best-K kernel RMSE of the Morlet approximations at sigma: K scans
/// [2 sigma, 4 sigma] in steps of 4, P_S auto-selected for the direct method,
/// evaluation over [-5K, 5K].
std::vector<RmseReport> morlet_rmse_sweep(double sigma, const std::vector<double>& xis,
                                          bool direct_method, int order, int n0);

struct BenchRow {
  std::string method;  // "sft" or "conv"
  std::int64_t size = 0;
  double sigma = 0.0;
  std::string precision;
  int workers = 1;
  std::int64_t median_ns = 0;
  std::int64_t model_mults = 0;
  std::int64_t model_adds = 0;
};

/// Times Gaussian smoothing (P=6, second-order recursive SFT) against the
/// truncated-convolution reference over (N, sigma) grid points. Medians of
/// `repetitions` runs after `warmups` discarded runs.
std::vector<BenchRow> bench_sft_vs_conv(const std::vector<std::pair<std::int64_t, double>>& grid,
                                        int repetitions, int warmups, int workers,
                                        Precision precision, std::uint64_t seed = 1234);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

}  // namespace sft
