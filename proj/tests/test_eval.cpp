#include <doctest.h>

#include <sstream>

#include "sft/eval.hpp"
#include "sft/sliding_sum.hpp"
#include "sft/signal.hpp"

using namespace sft;
using doctest::Approx;

TEST_CASE("relative rmse basics") {
  Eigen::ArrayXcd truth(3);
  truth << 1.0, 2.0, 2.0;
  CHECK(relative_rmse(truth, truth) == 0.0);
  CHECK(relative_rmse(Eigen::ArrayXcd(Eigen::ArrayXcd::Zero(3)), truth) == Approx(100.0));

  Eigen::ArrayXcd approx(3);
  approx << 1.1, 1.9, 2.05;
  const double base = relative_rmse(approx, truth);
  CHECK(relative_rmse(Eigen::ArrayXcd(-3.0 * approx), Eigen::ArrayXcd(-3.0 * truth)) ==
        Approx(base).epsilon(1e-12));

  CHECK_THROWS_AS(relative_rmse(truth, Eigen::ArrayXcd(Eigen::ArrayXcd::Zero(3))),
                  std::invalid_argument);
  CHECK_THROWS_AS(relative_rmse(truth, Eigen::ArrayXcd(Eigen::ArrayXcd::Ones(2))),
                  std::invalid_argument);
}

TEST_CASE("linear fit and rank correlation") {
  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(50, 0, 49);
  Eigen::ArrayXd y = 3.0 + 0.25 * x;
  const LinearFit fit = linear_fit(x, y);
  CHECK(fit.slope == Approx(0.25).epsilon(1e-12));
  CHECK(fit.intercept == Approx(3.0).epsilon(1e-10));
  CHECK(fit.slope_stderr == Approx(0.0).scale(1e-12));

  CHECK(spearman_rho({1, 2, 3, 4}, {10, 20, 30, 40}) == Approx(1.0));
  CHECK(spearman_rho({1, 2, 3, 4}, {9, 7, 5, 3}) == Approx(-1.0));
  CHECK(spearman_rho({1, 2, 3, 4}, {1, 3, 2, 4}) == Approx(0.8).epsilon(1e-12));
}

TEST_CASE("the 3-sigma truncation baseline") {
  const double baseline = truncation_baseline_rmse(256);
  CHECK(baseline == Approx(0.46).epsilon(0.11));  // 0.46% +- 0.05pp
  CHECK(baseline > 0.41);
  CHECK(baseline < 0.51);
}

TEST_CASE("rmse csv layout") {
  RmseReport report;
  report.abbreviation = "MDP6";
  report.max_order = 6;
  report.ps = 4;
  report.xi = 10.0;
  report.half_width = 196;
  report.beta = M_PI / 196;
  report.rmse_percent = 0.44;
  std::ostringstream out;
  write_rmse_csv(out, {report});
  const std::string text = out.str();
  CHECK(text.find("abbreviation,P,P_S,xi,K,beta,rmse_percent\n") == 0);
  CHECK(text.find("MDP6,6,4,10,196,") != std::string::npos);
}

TEST_CASE("morlet sweep smoke") {
  const auto direct = morlet_rmse_sweep(20.0, {6.0}, true, 5, 0);
  REQUIRE(direct.size() == 1);
  CHECK(direct[0].half_width >= 40);
  CHECK(direct[0].half_width <= 80);
  CHECK(direct[0].rmse_percent > 0.0);
  CHECK(direct[0].rmse_percent < 5.0);
  CHECK(direct[0].method == "direct");

  const auto multiply = morlet_rmse_sweep(20.0, {6.0}, false, 3, 0);
  REQUIRE(multiply.size() == 1);
  CHECK(multiply[0].method == "multiply");
  CHECK(multiply[0].rmse_percent < 5.0);
}

TEST_CASE("direct-method accuracy tracks the 3-sigma-truncated wavelet") {
  const double sigma = 60.0, xi = 10.0;
  const auto sweep = morlet_rmse_sweep(sigma, {xi}, true, 6, 0);
  REQUIRE(sweep.size() == 1);

  const int trunc = static_cast<int>(3 * sigma);
  const MorletParams params(sigma, xi, trunc);
  const int eval_half = 5 * trunc;
  Eigen::ArrayXcd approx(2 * eval_half + 1), truth(2 * eval_half + 1);
  for (int n = -eval_half; n <= eval_half; ++n) {
    truth[n + eval_half] = morlet(params, n);
    approx[n + eval_half] = std::abs(n) <= trunc ? truth[n + eval_half] : 0.0;
  }
  const double truncated_rmse = relative_rmse(approx, truth);
  CHECK(sweep[0].rmse_percent < 1.5 * truncated_rmse);
  CHECK(sweep[0].rmse_percent > 0.1 * truncated_rmse);
}

TEST_CASE("attenuated sweep stays close to the plain one") {
  for (double xi : {8.0, 14.0}) {
    const auto plain = morlet_rmse_sweep(60.0, {xi}, true, 7, 0);
    const auto shifted = morlet_rmse_sweep(60.0, {xi}, true, 7, 5);
    const double ratio = shifted[0].rmse_percent / plain[0].rmse_percent;
    CHECK(ratio < 1.5);
    CHECK(ratio > 0.5);
  }
}

TEST_CASE("bench rows carry the model operation counts") {
  const std::vector<BenchRow> rows =
      bench_sft_vs_conv({{2000, 4.0}}, 3, 0, 1, Precision::Double, 5);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].method == "sft");
  CHECK(rows[1].method == "conv");
  CHECK(rows[0].model_mults == sft_method_counts(2000, 6, 12, 1).mults);
  CHECK(rows[1].model_mults == conv_method_counts(2000, 4.0, 1).mults);
  CHECK(rows[0].median_ns > 0);
  CHECK(rows[1].median_ns > 0);

  std::ostringstream out;
  write_bench_csv(out, rows);
  CHECK(out.str().find("method,N,sigma,precision,workers,median_ns,model_mults,model_adds\n") ==
        0);

  CHECK_THROWS_AS(bench_sft_vs_conv({{100, 2.0}}, 2, 0, 1, Precision::Double),
                  std::invalid_argument);
}
