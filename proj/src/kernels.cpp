#include "sft/kernels.hpp"

#include "sft/parallel.hpp"

namespace sft {

KernelTaps sample_gauss(const GaussianParams& p) {
  const int k = p.half_width;
  Eigen::ArrayXcd taps(2 * k + 1);
  for (int i = -k; i <= k; ++i) taps[i + k] = gauss(p, i);
  return {std::move(taps), -k};
}

KernelTaps sample_gauss_d(const GaussianParams& p) {
  const int k = p.half_width;
  Eigen::ArrayXcd taps(2 * k + 1);
  for (int i = -k; i <= k; ++i) taps[i + k] = gauss_d(p, i);
  return {std::move(taps), -k};
}

KernelTaps sample_gauss_dd(const GaussianParams& p) {
  const int k = p.half_width;
  Eigen::ArrayXcd taps(2 * k + 1);
  for (int i = -k; i <= k; ++i) taps[i + k] = gauss_dd(p, i);
  return {std::move(taps), -k};
}

KernelTaps sample_morlet(const MorletParams& p) {
  const int k = p.half_width;
  Eigen::ArrayXcd taps(2 * k + 1);
  for (int i = -k; i <= k; ++i) taps[i + k] = morlet(p, i);
  return {std::move(taps), -k};
}

Eigen::ArrayXcd truncated_convolution(const Signal& sig, const KernelTaps& kernel,
                                      int workers) {
  const std::int64_t size = sig.size();
  const std::int64_t len = kernel.taps.size();
  if (len < 1) throw std::invalid_argument("truncated_convolution: empty kernel");
  Eigen::ArrayXcd out(size);
  bulk_parallel_for(0, size, workers, [&](std::int64_t a, std::int64_t b) {
    for (std::int64_t n = a; n < b; ++n) {
      std::complex<double> acc(0.0, 0.0);
      for (std::int64_t j = 0; j < len; ++j) {
        acc += kernel.taps[j] * extended_sample(sig, n - (kernel.lo + j));
      }
      out[n] = acc;
    }
  });
  return out;
}

Eigen::ArrayXd truncated_convolution_real(const Signal& sig, const KernelTaps& kernel,
                                          int workers) {
  return truncated_convolution(sig, kernel, workers).real();
}

}  // namespace sft
