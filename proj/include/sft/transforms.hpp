#pragma once

#include <optional>
#include <string>

#include "sft/engine.hpp"
#include "sft/fourier_fit.hpp"

namespace sft {

enum class TransformKind {
  Gauss,
  GaussD,
  GaussDD,
  MorletDirect,
  MorletMultiply,
  TruncConvGauss,   // GCT3: plain truncated convolution, the reference path
  TruncConvMorlet,  // MCT3
};

/// A fully resolved transform: parameters, fitted coefficients, engine
/// configuration, and the abbreviation it decodes from/encodes to.
struct TransformSpec {
  TransformKind kind = TransformKind::Gauss;
  std::optional<GaussianParams> gaussian;
  std::optional<MorletParams> morlet;
  int max_order = 0;  // P (Gauss) or P_M (multiply)
  int ps = 0;         // direct-method start order
  int pd = 0;         // direct-method order count
  double beta = 0.0;
  int n0 = 0;         // 0 => SFT; > 0 => ASFT with alpha = 2 gamma n0
  double alpha = 0.0;
  Strategy strategy = Strategy::Recursive2;
  Precision precision = Precision::Double;
  std::string abbreviation;
  double kernel_rmse_percent = 0.0;  // effective kernel vs true kernel

  std::optional<GaussianFitBundle> gauss_coeffs;
  std::optional<CoefficientSet> morlet_coeffs;    // direct method
  std::optional<CoefficientSet> envelope_coeffs;  // multiplication method
};

struct TransformOptions {
  std::optional<int> half_width;  // default ceil(3 sigma)
  std::optional<double> beta;     // default pi/K
  bool tune_beta = false;         // Gaussian kinds only
  std::optional<int> ps;          // direct method; otherwise auto-selected
  Strategy strategy = Strategy::Recursive2;
  Precision precision = Precision::Double;
};

/// Decoded form of a filter abbreviation such as "GDP6", "MDS5P7", "MMP3",
/// "GCT3": transform family, method, optional ASFT shift, order count.
struct AbbrevInfo {
  TransformKind kind;
  int n0 = 0;
  int order = 0;
};

AbbrevInfo parse_abbreviation(const std::string& abbreviation);
std::string encode_abbreviation(TransformKind kind, int n0, int order);

/// Factories fit the needed coefficient sets and record the effective-kernel
/// RMSE. sigma is the Gaussian/Morlet scale; xi is ignored for Gaussian kinds.
TransformSpec make_transform_spec(const std::string& abbreviation, double sigma, double xi,
                                  const TransformOptions& options = {});
TransformSpec make_gauss_spec(double sigma, GaussKind kind, int max_order, int n0,
                              const TransformOptions& options = {});
TransformSpec make_morlet_direct_spec(double sigma, double xi, int pd, int n0,
                                      const TransformOptions& options = {});
TransformSpec make_morlet_multiply_spec(double sigma, double xi, int pm, int n0,
                                        const TransformOptions& options = {});

struct TransformResult {
  Eigen::ArrayXcd values;
  bool complex_valued = false;
  std::string abbreviation;
  Strategy strategy = Strategy::Recursive2;
  Precision precision = Precision::Double;
  double kernel_rmse_percent = 0.0;
};

/// Gaussian smoothing or differentiation via SFT components; the ASFT variant
/// applies the attenuation compensation e^{-alpha^2/4 gamma}, the derivative
/// mixing terms, and the n0 output re-indexing.
TransformResult gauss_smooth(const Signal& sig, const TransformSpec& spec, int workers = 1);

/// Morlet transform with directly fitted sinusoid orders P_S..P_S+P_D-1.
TransformResult morlet_direct_transform(const Signal& sig, const TransformSpec& spec,
                                        int workers = 1);

/// Morlet transform as (fitted Gaussian envelope) x (carrier): 2P+1
/// real-frequency component pairs at omega_p = xi/sigma + beta p plus the
/// kappa correction on integer orders.
TransformResult morlet_multiply_transform(const Signal& sig, const TransformSpec& spec,
                                          int workers = 1);

/// GCT3 / MCT3: direct truncated convolution with the true kernel.
TransformResult truncated_reference(const Signal& sig, const TransformSpec& spec,
                                    int workers = 1);

TransformResult apply_transform(const Signal& sig, const TransformSpec& spec, int workers = 1);

/// The kernel the assembled transform actually applies (fitted series,
/// attenuation-compensated and shifted for ASFT). apply_transform equals
/// truncated convolution with these taps to floating-point accuracy.
KernelTaps effective_kernel(const TransformSpec& spec);

}  // namespace sft
