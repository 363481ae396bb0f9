#include "sft/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "sft/signal.hpp"
#include "sft/sliding_sum.hpp"

namespace sft {
namespace {

void csv_number(std::ostream& os, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  os << buf;
}

}  // namespace

void write_rmse_csv(std::ostream& os, const std::vector<RmseReport>& reports) {
  os << "abbreviation,P,P_S,xi,K,beta,rmse_percent\n";
  for (const RmseReport& report : reports) {
    os << report.abbreviation << ',' << report.max_order << ',' << report.ps << ',';
    csv_number(os, report.xi);
    os << ',' << report.half_width << ',';
    csv_number(os, report.beta);
    os << ',';
    csv_number(os, report.rmse_percent);
    os << '\n';
  }
}

double truncation_baseline_rmse(int half_width) {
  const double sigma = half_width / 3.0;
  const GaussianParams params(sigma, half_width);
  const int trunc = static_cast<int>(std::floor(3.0 * sigma + 1e-9));
  const int eval_half = 3 * half_width;
  Eigen::ArrayXd approx(2 * eval_half + 1), truth(2 * eval_half + 1);
  for (int n = -eval_half; n <= eval_half; ++n) {
    truth[n + eval_half] = gauss(params, n);
    approx[n + eval_half] = std::abs(n) <= trunc ? truth[n + eval_half] : 0.0;
  }
  return relative_rmse(approx, truth);
}

namespace {

// Golden-section minimization with a coarse bracketing prescan.
template <typename Fn>
double golden_min(Fn&& f, double lo, double hi, int prescan, double rel_tol) {
  int best_i = 0;
  double best_v = 0.0;
  auto at = [&](int i) { return lo + (hi - lo) * i / (prescan - 1); };
  for (int i = 0; i < prescan; ++i) {
    const double v = f(at(i));
    if (i == 0 || v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  double a = at(std::max(0, best_i - 1));
  double b = at(std::min(prescan - 1, best_i + 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > rel_tol * b) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

const char* gauss_kind_label(GaussKind kind) {
  switch (kind) {
    case GaussKind::Value: return "G";
    case GaussKind::Deriv1: return "GD";
    case GaussKind::Deriv2: return "GDD";
  }
  return "?";
}

}  // namespace

std::vector<RmseReport> table1_experiment(int half_width, int asft_n0) {
  std::vector<RmseReport> reports;
  for (int n0 : {0, asft_n0}) {
    for (int order = 2; order <= 6; ++order) {
      auto value_rmse_at_sigma = [&](double sigma) {
        return tune_beta_gauss(GaussianParams(sigma, half_width), order, n0).rmse_percent;
      };
      const double sigma_star =
          golden_min(value_rmse_at_sigma, half_width / 5.0, half_width / 2.8, 17, 1e-5);
      const GaussianParams params(sigma_star, half_width);
      const double beta_star = tune_beta_gauss(params, order, n0).beta;
      const GaussianFitBundle bundle = fit_gaussian_bundle(params, order, beta_star);

      for (GaussKind kind : {GaussKind::Value, GaussKind::Deriv1, GaussKind::Deriv2}) {
        RmseReport report;
        TransformKind tkind = kind == GaussKind::Value
                                  ? TransformKind::Gauss
                                  : (kind == GaussKind::Deriv1 ? TransformKind::GaussD
                                                               : TransformKind::GaussDD);
        report.abbreviation = encode_abbreviation(tkind, n0, order);
        report.transform = gauss_kind_label(kind);
        report.method = "direct";
        report.variant = n0 == 0 ? "SFT" : "ASFT";
        report.max_order = order;
        report.half_width = half_width;
        report.beta = beta_star;
        report.sigma = sigma_star;
        report.n0 = n0;
        report.interval = "[-3K,3K]";
        report.rmse_percent = gauss_kernel_rmse(bundle, kind, n0);
        reports.push_back(std::move(report));
      }
    }
  }
  return reports;
}

std::vector<RmseReport> morlet_rmse_sweep(double sigma, const std::vector<double>& xis,
                                          bool direct_method, int order, int n0) {
  std::vector<RmseReport> reports;
  const int k_lo = static_cast<int>(2 * sigma);
  const int k_hi = static_cast<int>(4 * sigma);
  for (double xi : xis) {
    RmseReport best;
    bool have = false;
    for (int k = k_lo; k <= k_hi; k += 4) {
      const MorletParams params(sigma, xi, k);
      double rmse;
      int ps = 0;
      if (direct_method) {
        ps = select_optimal_ps(params, order, n0);
        rmse = morlet_direct_kernel_rmse(params, ps, order, n0);
      } else {
        rmse = morlet_multiply_kernel_rmse(params, order, n0);
      }
      if (!have || rmse < best.rmse_percent) {
        have = true;
        best.abbreviation = encode_abbreviation(direct_method ? TransformKind::MorletDirect
                                                              : TransformKind::MorletMultiply,
                                                n0, order);
        best.transform = "Morlet";
        best.method = direct_method ? "direct" : "multiply";
        best.variant = n0 == 0 ? "SFT" : "ASFT";
        best.max_order = order;
        best.ps = ps;
        best.xi = xi;
        best.half_width = k;
        best.beta = M_PI / k;
        best.sigma = sigma;
        best.n0 = n0;
        best.interval = "[-5K,5K]";
        best.rmse_percent = rmse;
      }
    }
    reports.push_back(std::move(best));
  }
  return reports;
}

std::vector<BenchRow> bench_sft_vs_conv(const std::vector<std::pair<std::int64_t, double>>& grid,
                                        int repetitions, int warmups, int workers,
                                        Precision precision, std::uint64_t seed) {
  if (repetitions < 3) throw std::invalid_argument("bench: repetitions must be >= 3");
  using clock = std::chrono::steady_clock;
  std::vector<BenchRow> rows;
  for (const auto& [size, sigma] : grid) {
    const Signal sig = make_test_signal(TestSignalKind::SeededNoise, size, seed);

    TransformOptions options;
    options.strategy = Strategy::Recursive2;
    options.precision = precision;
    const TransformSpec sft_spec = make_gauss_spec(sigma, GaussKind::Value, 6, 0, options);
    const TransformSpec conv_spec = make_transform_spec("GCT3", sigma, 0.0);

    auto timed = [&](auto&& fn) {
      std::vector<std::int64_t> samples;
      for (int i = 0; i < warmups; ++i) fn();
      for (int i = 0; i < repetitions; ++i) {
        const auto start = clock::now();
        fn();
        samples.push_back(
            std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - start).count());
      }
      std::sort(samples.begin(), samples.end());
      return samples[samples.size() / 2];
    };

    BenchRow sft_row;
    sft_row.method = "sft";
    sft_row.size = size;
    sft_row.sigma = sigma;
    sft_row.precision = precision == Precision::Double ? "double" : "single";
    sft_row.workers = workers;
    sft_row.median_ns = timed([&] { gauss_smooth(sig, sft_spec, workers); });
    const MethodOpCounts sft_counts =
        sft_method_counts(size, 6, sft_spec.gaussian->half_width, workers);
    sft_row.model_mults = sft_counts.mults;
    sft_row.model_adds = sft_counts.adds;
    rows.push_back(sft_row);

    BenchRow conv_row = sft_row;
    conv_row.method = "conv";
    conv_row.median_ns = timed([&] { truncated_reference(sig, conv_spec, workers); });
    const MethodOpCounts conv_counts = conv_method_counts(size, sigma, workers);
    conv_row.model_mults = conv_counts.mults;
    conv_row.model_adds = conv_counts.adds;
    rows.push_back(conv_row);
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "method,N,sigma,precision,workers,median_ns,model_mults,model_adds\n";
  for (const BenchRow& row : rows) {
    os << row.method << ',' << row.size << ',';
    csv_number(os, row.sigma);
    os << ',' << row.precision << ',' << row.workers << ',' << row.median_ns << ','
       << row.model_mults << ',' << row.model_adds << '\n';
  }
}

}  // namespace sft
