#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace sft {

/// sqrt(sum |approx-truth|^2 / sum |truth|^2) * 100, on a shared grid.
inline double relative_rmse(const Eigen::Ref<const Eigen::ArrayXcd>& approx,
                            const Eigen::Ref<const Eigen::ArrayXcd>& truth) {
  if (approx.size() != truth.size())
    throw std::invalid_argument("relative_rmse: grids differ");
  const double denom = truth.abs2().sum();
  if (!(denom > 0.0)) throw std::invalid_argument("relative_rmse: truth has zero norm");
  return std::sqrt((approx - truth).abs2().sum() / denom) * 100.0;
}

inline double relative_rmse(const Eigen::Ref<const Eigen::ArrayXd>& approx,
                            const Eigen::Ref<const Eigen::ArrayXd>& truth) {
  if (approx.size() != truth.size())
    throw std::invalid_argument("relative_rmse: grids differ");
  const double denom = truth.abs2().sum();
  if (!(denom > 0.0)) throw std::invalid_argument("relative_rmse: truth has zero norm");
  return std::sqrt((approx - truth).abs2().sum() / denom) * 100.0;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};

/// Ordinary least squares of y against x, with the usual slope standard error.
inline LinearFit linear_fit(const Eigen::Ref<const Eigen::ArrayXd>& x,
                            const Eigen::Ref<const Eigen::ArrayXd>& y) {
  const auto count = x.size();
  if (count != y.size() || count < 3) throw std::invalid_argument("linear_fit: bad input");
  const double mx = x.mean();
  const double my = y.mean();
  const double sxx = (x - mx).square().sum();
  if (!(sxx > 0.0)) throw std::invalid_argument("linear_fit: degenerate x");
  LinearFit fit;
  fit.slope = ((x - mx) * (y - my)).sum() / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = (y - (fit.intercept + fit.slope * x)).square().sum();
  fit.slope_stderr = std::sqrt(ss_res / (static_cast<double>(count) - 2.0) / sxx);
  return fit;
}

/// Spearman rank correlation (average ranks on ties).
inline double spearman_rho(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman_rho: bad input");
  auto ranks = [](const std::vector<double>& v) {
    const std::size_t len = v.size();
    std::vector<std::size_t> idx(len);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(len);
    std::size_t i = 0;
    while (i < len) {
      std::size_t j = i;
      while (j + 1 < len && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const auto len = static_cast<Eigen::Index>(a.size());
  Eigen::ArrayXd xa = Eigen::Map<const Eigen::ArrayXd>(ra.data(), len);
  Eigen::ArrayXd xb = Eigen::Map<const Eigen::ArrayXd>(rb.data(), len);
  xa -= xa.mean();
  xb -= xb.mean();
  const double denom = std::sqrt(xa.square().sum() * xb.square().sum());
  if (!(denom > 0.0)) return 0.0;
  return (xa * xb).sum() / denom;
}

}  // namespace sft
