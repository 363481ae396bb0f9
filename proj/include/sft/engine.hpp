#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

#include "sft/signal.hpp"

namespace sft {

/// Interchangeable evaluation strategies for the windowed component sums.
/// KernelIntegral follows the prefix-sum/window-difference route (the one the
/// data-parallel sliding sum accelerates); Recursive1/Recursive2 are the
/// first- and second-order recursive filters with the 2K truncation.
enum class Strategy { KernelIntegral, Recursive1, Recursive2 };

struct OrderSpec {
  bool integer_order = true;
  int p = 0;
  double omega = 0.0;

  static OrderSpec order(int p) {
    if (p < 0) throw std::invalid_argument("OrderSpec: p must be >= 0");
    OrderSpec spec;
    spec.integer_order = true;
    spec.p = p;
    return spec;
  }

  static OrderSpec frequency(double omega) {
    OrderSpec spec;
    spec.integer_order = false;
    spec.omega = omega;
    return spec;
  }

  double angular(double beta) const { return integer_order ? beta * p : omega; }
};

struct SftConfig {
  int half_width;  // K
  double beta;     // rad/sample; pi/K gives the simplified 2K truncation
  OrderSpec order;
  double alpha = 0.0;  // 0 => plain SFT; > 0 => attenuated
  int n0 = 0;          // shift paired with alpha by the caller (alpha = 2 gamma n0)
  Strategy strategy = Strategy::Recursive2;
  Precision precision = Precision::Double;
  bool window_2k1 = false;  // use the 2K+1 truncation instead of 2K

  void validate() const {
    if (half_width < 1) throw std::invalid_argument("SftConfig: K must be >= 1");
    if (!(beta > 0.0) && order.integer_order)
      throw std::invalid_argument("SftConfig: beta must be > 0");
    if (alpha < 0.0) throw std::invalid_argument("SftConfig: alpha must be >= 0");
    if (!order.integer_order && strategy != Strategy::KernelIntegral)
      throw std::invalid_argument(
          "SftConfig: real-frequency components require the kernel-integral strategy");
  }
};

/// c[n] = sum_k x[n-k] w[k] cos(omega k), s[n] = sum_k x[n-k] w[k] sin(omega k)
/// over k in [-K, K], with w[k] = e^{-alpha k} (w == 1 for plain SFT). The
/// attenuation weight decays with sample age so every recursion stays stable.
struct ComponentSeq {
  Eigen::ArrayXd c;
  Eigen::ArrayXd s;
};

/// Components over output indices [0, N-1]. Requires cfg.alpha == 0.
ComponentSeq sft_components(const Signal& sig, const SftConfig& cfg);

/// Attenuated components over [0, N-1]. Requires cfg.alpha > 0.
ComponentSeq asft_components(const Signal& sig, const SftConfig& cfg);

/// Components over an arbitrary signed output range [lo, hi]; out-of-range
/// signal reads resolve through the boundary policy. This is what the ASFT
/// reconstructions use to read the window at n - n0.
ComponentSeq components_over(const Signal& sig, const SftConfig& cfg, std::int64_t lo,
                             std::int64_t hi);

/// Kernel-integral window state u_{(2K+1)}[n+K] computed two ways: by prefix
/// differences and by the in-window recurrence. Exposed for the two-path
/// equivalence tests and the parallel module's validation. Plain SFT only.
struct WindowState {
  Eigen::ArrayXcd via_prefix;
  Eigen::ArrayXcd via_recurrence;
};

WindowState sliding_window_state(const Signal& sig, const SftConfig& cfg);

/// Runs cfg at single precision against a double-precision reference of the
/// same strategy. abs_error[n] = max(|dc|, |ds|) at n; max_component_error is
/// its max normalized by the reference's peak component magnitude.
struct StabilityReport {
  double max_state_magnitude = 0.0;
  double max_component_error = 0.0;
  double reference_scale = 0.0;
  Eigen::ArrayXd abs_error;
};

StabilityReport stability_probe(const Signal& sig, const SftConfig& cfg);

/// Kernel-integral components computed with the bulk-parallel sliding sum
/// (log-depth per-window summation trees). Each output is a fresh window sum,
/// so single-precision error carries no n-dependence. For alpha > 0 the phased
/// sequence is exponent-rebased at the signal midpoint; alpha * N / 2 > 600 is
/// rejected as it would overflow.
ComponentSeq sft_via_sliding_sum(const Signal& sig, const SftConfig& cfg, int workers = 1);

}  // namespace sft
