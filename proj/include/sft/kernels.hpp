#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "sft/signal.hpp"

namespace sft {

/// Gaussian kernel parameters; gamma = 1/(2 sigma^2) by definition.
struct GaussianParams {
  double sigma;
  int half_width;  // K: convolution window is [-K, K]

  explicit GaussianParams(double sigma_, int half_width_ = 0)
      : sigma(sigma_), half_width(half_width_ > 0 ? half_width_ : default_half_width(sigma_)) {
    if (!(sigma > 0.0)) throw std::invalid_argument("GaussianParams: sigma must be > 0");
    if (half_width < 1) throw std::invalid_argument("GaussianParams: K must be >= 1");
  }

  double gamma() const { return 1.0 / (2.0 * sigma * sigma); }

  static int default_half_width(double sigma) {
    return static_cast<int>(std::ceil(3.0 * sigma));
  }
};

/// Morlet wavelet parameters. xi is the dimensionless center frequency; the
/// admissibility constants follow from it.
struct MorletParams {
  double sigma;
  double xi;
  int half_width;

  MorletParams(double sigma_, double xi_, int half_width_ = 0)
      : sigma(sigma_), xi(xi_),
        half_width(half_width_ > 0 ? half_width_ : GaussianParams::default_half_width(sigma_)) {
    if (!(sigma > 0.0)) throw std::invalid_argument("MorletParams: sigma must be > 0");
    if (!(xi > 0.0)) throw std::invalid_argument("MorletParams: xi must be > 0");
    if (half_width < 1) throw std::invalid_argument("MorletParams: K must be >= 1");
  }

  double kappa_xi() const { return std::exp(-0.5 * xi * xi); }
  double c_xi() const {
    return 1.0 / std::sqrt(1.0 + std::exp(-xi * xi) - 2.0 * std::exp(-0.75 * xi * xi));
  }
  double gamma() const { return 1.0 / (2.0 * sigma * sigma); }
};

inline double gauss(const GaussianParams& p, double n) {
  const double g = p.gamma();
  return std::sqrt(g / M_PI) * std::exp(-g * n * n);
}

inline double gauss_d(const GaussianParams& p, double n) {
  return -2.0 * p.gamma() * n * gauss(p, n);
}

inline double gauss_dd(const GaussianParams& p, double n) {
  const double g = p.gamma();
  return (4.0 * g * g * n * n - 2.0 * g) * gauss(p, n);
}

inline std::complex<double> morlet(const MorletParams& p, double n) {
  const double env = p.c_xi() / (std::pow(M_PI, 0.25) * std::sqrt(p.sigma)) *
                     std::exp(-n * n / (2.0 * p.sigma * p.sigma));
  const double phase = p.xi * n / p.sigma;
  return env * (std::complex<double>(std::cos(phase), std::sin(phase)) - p.kappa_xi());
}

/// Kernel sampled on a contiguous signed support [lo, lo + taps.size() - 1].
struct KernelTaps {
  Eigen::ArrayXcd taps;
  std::int64_t lo = 0;

  std::int64_t hi() const { return lo + taps.size() - 1; }
};

KernelTaps sample_gauss(const GaussianParams& p);
KernelTaps sample_gauss_d(const GaussianParams& p);
KernelTaps sample_gauss_dd(const GaussianParams& p);
KernelTaps sample_morlet(const MorletParams& p);

/// out[n] = sum_k taps[k] * x[n - k] over the taps' support, with the signal's
/// boundary policy. O(K N): this is the exactness oracle for every transform.
Eigen::ArrayXcd truncated_convolution(const Signal& sig, const KernelTaps& kernel,
                                      int workers = 1);

/// Real-kernel convenience (imaginary parts of taps must be zero).
Eigen::ArrayXd truncated_convolution_real(const Signal& sig, const KernelTaps& kernel,
                                          int workers = 1);

}  // namespace sft
