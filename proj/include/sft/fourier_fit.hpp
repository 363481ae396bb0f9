#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sft/kernels.hpp"

namespace sft {

/// Trigonometric basis on integer nodes k in [-K, K]: cos(beta*p*k) for the
/// cosine orders and sin(beta*p*k) for the sine orders. beta defaults to pi/K
/// (basic wavelength 2K) but is tunable; the basis is not orthogonal in
/// general, so fits always solve the full Gram system.
struct HarmonicGrid {
  int half_width;  // K
  double beta;
  std::vector<int> cos_orders;
  std::vector<int> sin_orders;

  HarmonicGrid(int k, double beta_, std::vector<int> cos_p, std::vector<int> sin_p)
      : half_width(k), beta(beta_), cos_orders(std::move(cos_p)), sin_orders(std::move(sin_p)) {
    if (half_width < 1) throw std::invalid_argument("HarmonicGrid: K must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("HarmonicGrid: beta must be > 0");
    for (int p : sin_orders)
      if (p == 0) throw std::invalid_argument("HarmonicGrid: sin order 0 is identically zero");
    check_distinct(cos_orders);
    check_distinct(sin_orders);
    const std::size_t basis = cos_orders.size() + sin_orders.size();
    if (basis == 0) throw std::invalid_argument("HarmonicGrid: empty basis");
    if (basis > static_cast<std::size_t>(2 * half_width + 1))
      throw std::invalid_argument("HarmonicGrid: more basis functions than nodes");
  }

  std::size_t basis_size() const { return cos_orders.size() + sin_orders.size(); }

 private:
  static void check_distinct(const std::vector<int>& orders) {
    for (std::size_t i = 0; i < orders.size(); ++i)
      for (std::size_t j = i + 1; j < orders.size(); ++j)
        if (orders[i] == orders[j])
          throw std::invalid_argument("HarmonicGrid: duplicate order");
  }
};

enum class CoeffKind { GaussCos, GaussDerivSin, GaussDeriv2Cos, MorletDirect, MorletMultiply };

const char* coeff_kind_name(CoeffKind kind);
CoeffKind coeff_kind_from_name(const std::string& name);

/// Fitted Fourier-series coefficients. cos_coeffs/sin_coeffs align with the
/// grid's order lists; they are real for the Gaussian kinds and complex for
/// the Morlet ones. fit_rmse_percent is the residual on the fit grid [-K, K].
struct CoefficientSet {
  CoeffKind kind;
  HarmonicGrid grid;
  Eigen::VectorXcd cos_coeffs;
  Eigen::VectorXcd sin_coeffs;
  double fit_rmse_percent = 0.0;

  // provenance recorded for serialization / compatibility checks
  double sigma = 0.0;
  double xi = 0.0;
  int n0 = 0;
};

/// Thrown when the Gram matrix condition estimate exceeds 1e12.
class FitDegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares fit of a real target sampled on the integer grid [-K, K]
/// (target.size() == 2K+1), solved through the normal equations in double
/// precision with a condition check.
CoefficientSet fit_mmse(const Eigen::Ref<const Eigen::ArrayXd>& target,
                        const HarmonicGrid& grid, CoeffKind kind);

/// Complex-target variant: real and imaginary parts are fitted independently
/// on the same basis.
CoefficientSet fit_mmse(const Eigen::Ref<const Eigen::ArrayXcd>& target,
                        const HarmonicGrid& grid, CoeffKind kind);

/// Evaluate the fitted series at arbitrary (real) points.
Eigen::ArrayXcd reconstruct(const CoefficientSet& coeffs,
                            const Eigen::Ref<const Eigen::ArrayXd>& points);

/// The three Gaussian coefficient sets (a_p, b_p, d_p) fitted at one shared
/// (K, beta), as the smoothing reconstructions consume them.
struct GaussianFitBundle {
  GaussianParams params;
  double beta;
  int max_order;              // P
  Eigen::VectorXd a;          // cos, orders 0..P, fits G
  Eigen::VectorXd b;          // sin, orders 1..P, fits G_D
  Eigen::VectorXd d;          // cos, orders 0..P, fits G_DD
  double fit_rmse_g = 0.0;
  double fit_rmse_gd = 0.0;
  double fit_rmse_gdd = 0.0;
};

GaussianFitBundle fit_gaussian_bundle(const GaussianParams& params, int max_order, double beta);

enum class GaussKind { Value, Deriv1, Deriv2 };

/// Effective kernel applied by the assembled transform. For SFT (n0 == 0) it
/// is the fitted series on [-K, K]; for ASFT it is the attenuation-compensated,
/// shifted mix on [-K+n0, K+n0] that the component reconstruction realizes.
KernelTaps gauss_effective_taps(const GaussianFitBundle& bundle, GaussKind kind, int n0);
KernelTaps morlet_direct_effective_taps(const CoefficientSet& coeffs, const MorletParams& params,
                                        int n0);
KernelTaps morlet_multiply_effective_taps(const CoefficientSet& envelope,
                                          const MorletParams& params, int n0);

/// Relative RMSE of the effective kernel against the true kernel, with the
/// approximation taken as 0 outside its support. Gaussian kinds evaluate on
/// [-3K, 3K]; the Morlet helpers on [-5K, 5K].
double gauss_kernel_rmse(const GaussianFitBundle& bundle, GaussKind kind, int n0);
double morlet_direct_kernel_rmse(const MorletParams& params, int ps, int pd, int n0,
                                 CoefficientSet* out_coeffs = nullptr);
double morlet_multiply_kernel_rmse(const MorletParams& params, int pm, int n0,
                                   CoefficientSet* out_coeffs = nullptr);

/// Morlet direct-method fit for orders P_S .. P_S+P_D-1. SFT fits Re(psi) on
/// cosines and Im(psi) on sines; ASFT (n0 > 0) fits the carrier-advanced
/// target env(q)*(e^{i xi (q+n0)/sigma} - kappa) on the full cos+sin basis,
/// which is the kernel the attenuated window actually realizes.
CoefficientSet fit_morlet_direct(const MorletParams& params, int ps, int pd, double beta,
                                 int n0 = 0);

/// Gaussian-envelope fit for the multiplication method (cos orders 0..P of the
/// scaled envelope C_xi pi^{-1/4} sigma^{-1/2} e^{-gamma n^2}).
CoefficientSet fit_morlet_envelope(const MorletParams& params, int max_order, double beta);

/// Exhaustive scan of P_S in [0, ceil(K xi / (pi sigma)) + P_D] minimizing the
/// [-5K, 5K] kernel RMSE; ties break toward smaller P_S.
int select_optimal_ps(const MorletParams& params, int pd, int n0 = 0);

struct BetaTuneResult {
  double beta = 0.0;
  double rmse_percent = 0.0;
};

/// Bounded 1-D minimization of an RMSE profile over beta in
/// [0.5 pi/K, 1.5 pi/K]: 33-point prescan bracketing plus golden-section to
/// 1e-4 relative tolerance. Deterministic.
BetaTuneResult tune_beta(const std::function<double(double)>& rmse_of_beta, int half_width);

/// Gaussian convenience wrapper: tunes beta on the value-kernel RMSE for the
/// given variant (n0 == 0 means SFT) and reports the tuned value.
BetaTuneResult tune_beta_gauss(const GaussianParams& params, int max_order, int n0 = 0);

}  // namespace sft
