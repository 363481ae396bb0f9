#include "sft/transforms.hpp"

#include <cctype>
#include <cmath>

#include "sft/metrics.hpp"
#include "sft/parallel.hpp"

namespace sft {
namespace {

int default_half_width(double sigma, const TransformOptions& options) {
  return options.half_width.value_or(GaussianParams::default_half_width(sigma));
}

void check_shift(double sigma, int n0) {
  if (n0 < 0) throw std::invalid_argument("TransformSpec: n0 must be >= 0");
  if (n0 > sigma / 4.0)
    throw std::invalid_argument("TransformSpec: n0 must stay <= sigma/4");
}

double shift_alpha(double sigma, int n0) {
  const double gamma = 1.0 / (2.0 * sigma * sigma);
  return 2.0 * gamma * n0;
}

SftConfig base_config(const TransformSpec& spec) {
  SftConfig cfg;
  cfg.half_width = spec.gaussian ? spec.gaussian->half_width : spec.morlet->half_width;
  cfg.beta = spec.beta;
  cfg.alpha = spec.alpha;
  cfg.n0 = spec.n0;
  cfg.strategy = spec.strategy;
  cfg.precision = spec.precision;
  return cfg;
}

GaussKind gauss_kind_of(TransformKind kind) {
  switch (kind) {
    case TransformKind::Gauss: return GaussKind::Value;
    case TransformKind::GaussD: return GaussKind::Deriv1;
    case TransformKind::GaussDD: return GaussKind::Deriv2;
    default: throw std::invalid_argument("not a Gaussian transform kind");
  }
}

int oracle_half_width(double sigma) {
  return static_cast<int>(std::floor(3.0 * sigma + 1e-9));
}

}  // namespace

AbbrevInfo parse_abbreviation(const std::string& abbreviation) {
  if (abbreviation == "GCT3") return {TransformKind::TruncConvGauss, 0, 0};
  if (abbreviation == "MCT3") return {TransformKind::TruncConvMorlet, 0, 0};

  const auto fail = [&]() -> AbbrevInfo {
    throw std::invalid_argument("unrecognized filter abbreviation: " + abbreviation);
  };
  if (abbreviation.size() < 3) return fail();
  const char family = abbreviation[0];
  const char method = abbreviation[1];
  if ((family != 'G' && family != 'M') || (method != 'D' && method != 'M')) return fail();
  if (family == 'G' && method == 'M') return fail();

  std::size_t pos = 2;
  int n0 = 0;
  if (abbreviation[pos] == 'S') {
    ++pos;
    std::size_t digits = 0;
    while (pos + digits < abbreviation.size() &&
           std::isdigit(static_cast<unsigned char>(abbreviation[pos + digits])))
      ++digits;
    if (digits == 0) return fail();
    n0 = std::stoi(abbreviation.substr(pos, digits));
    pos += digits;
    if (n0 < 1) return fail();
  }
  if (pos >= abbreviation.size() || abbreviation[pos] != 'P') return fail();
  ++pos;
  if (pos >= abbreviation.size()) return fail();
  for (std::size_t i = pos; i < abbreviation.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(abbreviation[i]))) return fail();
  const int order = std::stoi(abbreviation.substr(pos));
  if (order < 1) return fail();

  AbbrevInfo info;
  info.n0 = n0;
  info.order = order;
  if (family == 'G')
    info.kind = TransformKind::Gauss;
  else
    info.kind = method == 'D' ? TransformKind::MorletDirect : TransformKind::MorletMultiply;
  return info;
}

std::string encode_abbreviation(TransformKind kind, int n0, int order) {
  switch (kind) {
    case TransformKind::TruncConvGauss: return "GCT3";
    case TransformKind::TruncConvMorlet: return "MCT3";
    case TransformKind::Gauss:
    case TransformKind::GaussD:
    case TransformKind::GaussDD: {
      std::string tag = "GD";
      if (n0 > 0) tag += "S" + std::to_string(n0);
      tag += "P" + std::to_string(order);
      if (kind == TransformKind::GaussD) tag += ":d1";
      if (kind == TransformKind::GaussDD) tag += ":d2";
      return tag;
    }
    case TransformKind::MorletDirect:
    case TransformKind::MorletMultiply: {
      std::string tag = kind == TransformKind::MorletDirect ? "MD" : "MM";
      if (n0 > 0) tag += "S" + std::to_string(n0);
      tag += "P" + std::to_string(order);
      return tag;
    }
  }
  return "?";
}

TransformSpec make_gauss_spec(double sigma, GaussKind kind, int max_order, int n0,
                              const TransformOptions& options) {
  check_shift(sigma, n0);
  const int k = default_half_width(sigma, options);
  const GaussianParams params(sigma, k);
  TransformSpec spec;
  switch (kind) {
    case GaussKind::Value: spec.kind = TransformKind::Gauss; break;
    case GaussKind::Deriv1: spec.kind = TransformKind::GaussD; break;
    case GaussKind::Deriv2: spec.kind = TransformKind::GaussDD; break;
  }
  spec.gaussian = params;
  spec.max_order = max_order;
  spec.n0 = n0;
  spec.alpha = shift_alpha(sigma, n0);
  spec.strategy = options.strategy;
  spec.precision = options.precision;
  if (options.beta)
    spec.beta = *options.beta;
  else if (options.tune_beta)
    spec.beta = tune_beta_gauss(params, max_order, n0).beta;
  else
    spec.beta = M_PI / k;
  spec.gauss_coeffs = fit_gaussian_bundle(params, max_order, spec.beta);
  spec.kernel_rmse_percent = gauss_kernel_rmse(*spec.gauss_coeffs, kind, n0);
  spec.abbreviation = encode_abbreviation(spec.kind, n0, max_order);
  return spec;
}

TransformSpec make_morlet_direct_spec(double sigma, double xi, int pd, int n0,
                                      const TransformOptions& options) {
  check_shift(sigma, n0);
  const int k = default_half_width(sigma, options);
  const MorletParams params(sigma, xi, k);
  TransformSpec spec;
  spec.kind = TransformKind::MorletDirect;
  spec.morlet = params;
  spec.pd = pd;
  spec.ps = options.ps.value_or(-1);
  if (spec.ps < 0) spec.ps = select_optimal_ps(params, pd, n0);
  spec.n0 = n0;
  spec.alpha = shift_alpha(sigma, n0);
  spec.strategy = options.strategy;
  spec.precision = options.precision;
  spec.beta = options.beta.value_or(M_PI / k);
  CoefficientSet coeffs = fit_morlet_direct(params, spec.ps, pd, spec.beta, n0);
  spec.morlet_coeffs = coeffs;
  spec.kernel_rmse_percent = [&] {
    const KernelTaps taps = morlet_direct_effective_taps(coeffs, params, n0);
    const int eval_half = 5 * k;
    Eigen::ArrayXcd approx = Eigen::ArrayXcd::Zero(2 * eval_half + 1);
    Eigen::ArrayXcd truth(2 * eval_half + 1);
    for (int n = -eval_half; n <= eval_half; ++n) {
      truth[n + eval_half] = morlet(params, n);
      if (n >= taps.lo && n <= taps.hi()) approx[n + eval_half] = taps.taps[n - taps.lo];
    }
    return relative_rmse(approx, truth);
  }();
  spec.abbreviation = encode_abbreviation(spec.kind, n0, pd);
  return spec;
}

TransformSpec make_morlet_multiply_spec(double sigma, double xi, int pm, int n0,
                                        const TransformOptions& options) {
  check_shift(sigma, n0);
  const int k = default_half_width(sigma, options);
  const MorletParams params(sigma, xi, k);
  TransformSpec spec;
  spec.kind = TransformKind::MorletMultiply;
  spec.morlet = params;
  spec.max_order = pm;
  spec.n0 = n0;
  spec.alpha = shift_alpha(sigma, n0);
  spec.strategy = options.strategy;
  spec.precision = options.precision;
  spec.beta = options.beta.value_or(M_PI / k);
  CoefficientSet envelope = fit_morlet_envelope(params, pm, spec.beta);
  spec.envelope_coeffs = envelope;
  spec.kernel_rmse_percent = [&] {
    const KernelTaps taps = morlet_multiply_effective_taps(envelope, params, n0);
    const int eval_half = 5 * k;
    Eigen::ArrayXcd approx = Eigen::ArrayXcd::Zero(2 * eval_half + 1);
    Eigen::ArrayXcd truth(2 * eval_half + 1);
    for (int n = -eval_half; n <= eval_half; ++n) {
      truth[n + eval_half] = morlet(params, n);
      if (n >= taps.lo && n <= taps.hi()) approx[n + eval_half] = taps.taps[n - taps.lo];
    }
    return relative_rmse(approx, truth);
  }();
  spec.abbreviation = encode_abbreviation(spec.kind, n0, pm);
  return spec;
}

TransformSpec make_transform_spec(const std::string& abbreviation, double sigma, double xi,
                                  const TransformOptions& options) {
  const AbbrevInfo info = parse_abbreviation(abbreviation);
  switch (info.kind) {
    case TransformKind::Gauss:
      return make_gauss_spec(sigma, GaussKind::Value, info.order, info.n0, options);
    case TransformKind::MorletDirect:
      return make_morlet_direct_spec(sigma, xi, info.order, info.n0, options);
    case TransformKind::MorletMultiply:
      return make_morlet_multiply_spec(sigma, xi, info.order, info.n0, options);
    case TransformKind::TruncConvGauss: {
      TransformSpec spec;
      spec.kind = TransformKind::TruncConvGauss;
      spec.gaussian = GaussianParams(sigma, oracle_half_width(sigma));
      spec.abbreviation = "GCT3";
      return spec;
    }
    case TransformKind::TruncConvMorlet: {
      TransformSpec spec;
      spec.kind = TransformKind::TruncConvMorlet;
      spec.morlet = MorletParams(sigma, xi, oracle_half_width(sigma));
      spec.abbreviation = "MCT3";
      return spec;
    }
    default:
      throw std::invalid_argument("unsupported abbreviation: " + abbreviation);
  }
}

namespace {

struct ComplexAccumulator {
  Eigen::ArrayXd re;
  Eigen::ArrayXd im;

  explicit ComplexAccumulator(std::int64_t size)
      : re(Eigen::ArrayXd::Zero(size)), im(Eigen::ArrayXd::Zero(size)) {}

  void add(std::complex<double> coeff, const Eigen::ArrayXd& values) {
    if (coeff.real() != 0.0) re += coeff.real() * values;
    if (coeff.imag() != 0.0) im += coeff.imag() * values;
  }

  Eigen::ArrayXcd take() const {
    Eigen::ArrayXcd out(re.size());
    out.real() = re;
    out.imag() = im;
    return out;
  }
};

TransformResult finish(const TransformSpec& spec, Eigen::ArrayXcd values, bool complex_valued) {
  TransformResult result;
  result.values = std::move(values);
  result.complex_valued = complex_valued;
  result.abbreviation = spec.abbreviation;
  result.strategy = spec.strategy;
  result.precision = spec.precision;
  result.kernel_rmse_percent = spec.kernel_rmse_percent;
  return result;
}

}  // namespace

TransformResult gauss_smooth(const Signal& sig, const TransformSpec& spec, int workers) {
  if (!spec.gauss_coeffs) throw std::invalid_argument("gauss_smooth: missing coefficients");
  const GaussianFitBundle& bundle = *spec.gauss_coeffs;
  if (spec.kind != TransformKind::Gauss && spec.kind != TransformKind::GaussD &&
      spec.kind != TransformKind::GaussDD)
    throw std::invalid_argument("gauss_smooth: spec kind mismatch");

  const std::int64_t size = sig.size();
  const std::int64_t lo = -static_cast<std::int64_t>(spec.n0);
  const std::int64_t hi = size - 1 - spec.n0;

  const double alpha = spec.alpha;
  const double prefactor =
      spec.n0 == 0 ? 1.0 : std::exp(-alpha * alpha / (4.0 * bundle.params.gamma()));

  // Orders are independent; the accumulation below stays sequential so the
  // result never depends on the worker count.
  std::vector<ComponentSeq> comps(bundle.max_order + 1);
  bulk_parallel_for(0, bundle.max_order + 1, workers, [&](std::int64_t a, std::int64_t b) {
    for (std::int64_t p = a; p < b; ++p) {
      SftConfig cfg = base_config(spec);
      cfg.order = OrderSpec::order(static_cast<int>(p));
      comps[p] = components_over(sig, cfg, lo, hi);
    }
  });

  // Per-order weights on (c_p, s_p) implementing the value/derivative mixes.
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(size);
  for (int p = 0; p <= bundle.max_order; ++p) {
    const ComponentSeq& comp = comps[p];
    double wc = 0.0;
    double ws = 0.0;
    const double a_p = bundle.a[p];
    const double b_p = p >= 1 ? bundle.b[p - 1] : 0.0;
    const double d_p = bundle.d[p];
    switch (gauss_kind_of(spec.kind)) {
      case GaussKind::Value:
        wc = a_p;
        break;
      case GaussKind::Deriv1:
        ws = b_p;
        if (spec.n0 != 0) wc = -alpha * a_p;
        break;
      case GaussKind::Deriv2:
        wc = d_p;
        if (spec.n0 != 0) {
          wc += alpha * alpha * a_p;
          ws = -2.0 * alpha * b_p;
        }
        break;
    }
    if (wc != 0.0) out += wc * comp.c;
    if (ws != 0.0) out += ws * comp.s;
  }
  out *= prefactor;
  return finish(spec, out.cast<std::complex<double>>(), false);
}

TransformResult morlet_direct_transform(const Signal& sig, const TransformSpec& spec,
                                        int workers) {
  if (!spec.morlet_coeffs || spec.kind != TransformKind::MorletDirect)
    throw std::invalid_argument("morlet_direct_transform: spec mismatch");
  const CoefficientSet& coeffs = *spec.morlet_coeffs;
  const std::int64_t size = sig.size();
  const std::int64_t lo = -static_cast<std::int64_t>(spec.n0);
  const std::int64_t hi = size - 1 - spec.n0;
  const double prefactor =
      spec.n0 == 0 ? 1.0 : std::exp(-spec.alpha * spec.alpha / (4.0 * spec.morlet->gamma()));

  const auto order_count = static_cast<std::int64_t>(coeffs.grid.cos_orders.size());
  std::vector<ComponentSeq> comps(order_count);
  bulk_parallel_for(0, order_count, workers, [&](std::int64_t a, std::int64_t b) {
    for (std::int64_t i = a; i < b; ++i) {
      SftConfig cfg = base_config(spec);
      cfg.order = OrderSpec::order(coeffs.grid.cos_orders[i]);
      comps[i] = components_over(sig, cfg, lo, hi);
    }
  });

  ComplexAccumulator acc(size);
  Eigen::Index si = 0;
  for (Eigen::Index ci = 0; ci < order_count; ++ci) {
    const int p = coeffs.grid.cos_orders[ci];
    acc.add(coeffs.cos_coeffs[ci], comps[ci].c);
    if (si < static_cast<Eigen::Index>(coeffs.grid.sin_orders.size()) &&
        coeffs.grid.sin_orders[si] == p) {
      acc.add(coeffs.sin_coeffs[si], comps[ci].s);
      ++si;
    }
  }
  Eigen::ArrayXcd out = acc.take() * prefactor;
  return finish(spec, std::move(out), true);
}

TransformResult morlet_multiply_transform(const Signal& sig, const TransformSpec& spec,
                                          int workers) {
  if (!spec.envelope_coeffs || spec.kind != TransformKind::MorletMultiply)
    throw std::invalid_argument("morlet_multiply_transform: spec mismatch");
  const CoefficientSet& envelope = *spec.envelope_coeffs;
  const MorletParams& params = *spec.morlet;
  const std::int64_t size = sig.size();
  const std::int64_t lo = -static_cast<std::int64_t>(spec.n0);
  const std::int64_t hi = size - 1 - spec.n0;
  const double prefactor =
      spec.n0 == 0 ? 1.0 : std::exp(-spec.alpha * spec.alpha / (4.0 * params.gamma()));
  const double kappa = params.kappa_xi();
  const int max_order = spec.max_order;

  ComplexAccumulator acc(size);

  // Real-frequency pairs at omega_p = xi/sigma + beta p with weights a'_p
  // (the carrier phase advance xi n0 / sigma compensates the window shift),
  // plus the kappa correction on integer orders (the -kappa wavelet term).
  const std::int64_t real_count = 2 * max_order + 1;
  std::vector<ComponentSeq> comps(real_count + max_order + 1);
  bulk_parallel_for(0, static_cast<std::int64_t>(comps.size()), workers,
                    [&](std::int64_t a, std::int64_t b) {
                      for (std::int64_t i = a; i < b; ++i) {
                        SftConfig cfg = base_config(spec);
                        if (i < real_count) {
                          const int p = static_cast<int>(i) - max_order;
                          cfg.strategy = Strategy::KernelIntegral;
                          cfg.order =
                              OrderSpec::frequency(params.xi / params.sigma + spec.beta * p);
                        } else {
                          cfg.order = OrderSpec::order(static_cast<int>(i - real_count));
                        }
                        comps[i] = components_over(sig, cfg, lo, hi);
                      }
                    });

  const std::complex<double> carrier_phase =
      spec.n0 == 0 ? std::complex<double>(1.0, 0.0)
                   : std::complex<double>(std::cos(params.xi * spec.n0 / params.sigma),
                                          std::sin(params.xi * spec.n0 / params.sigma));
  for (int p = -max_order; p <= max_order; ++p) {
    const double a_p = envelope.cos_coeffs[std::abs(p)].real();
    const double a_prime = p == 0 ? a_p : 0.5 * a_p;
    const ComponentSeq& comp = comps[p + max_order];
    acc.add(carrier_phase * a_prime, comp.c);
    acc.add(carrier_phase * a_prime * std::complex<double>(0, 1), comp.s);
  }
  for (int p = 0; p <= max_order; ++p) {
    const double a_p = envelope.cos_coeffs[p].real();
    acc.add(-kappa * a_p, comps[real_count + p].c);
  }

  Eigen::ArrayXcd out = acc.take() * prefactor;
  return finish(spec, std::move(out), true);
}

TransformResult truncated_reference(const Signal& sig, const TransformSpec& spec, int workers) {
  KernelTaps taps;
  bool complex_valued = false;
  if (spec.kind == TransformKind::TruncConvGauss) {
    taps = sample_gauss(*spec.gaussian);
  } else if (spec.kind == TransformKind::TruncConvMorlet) {
    taps = sample_morlet(*spec.morlet);
    complex_valued = true;
  } else {
    throw std::invalid_argument("truncated_reference: spec mismatch");
  }
  return finish(spec, truncated_convolution(sig, taps, workers), complex_valued);
}

TransformResult apply_transform(const Signal& sig, const TransformSpec& spec, int workers) {
  switch (spec.kind) {
    case TransformKind::Gauss:
    case TransformKind::GaussD:
    case TransformKind::GaussDD:
      return gauss_smooth(sig, spec, workers);
    case TransformKind::MorletDirect:
      return morlet_direct_transform(sig, spec, workers);
    case TransformKind::MorletMultiply:
      return morlet_multiply_transform(sig, spec, workers);
    case TransformKind::TruncConvGauss:
    case TransformKind::TruncConvMorlet:
      return truncated_reference(sig, spec, workers);
  }
  throw std::invalid_argument("apply_transform: unknown kind");
}

KernelTaps effective_kernel(const TransformSpec& spec) {
  switch (spec.kind) {
    case TransformKind::Gauss:
    case TransformKind::GaussD:
    case TransformKind::GaussDD:
      return gauss_effective_taps(*spec.gauss_coeffs, gauss_kind_of(spec.kind), spec.n0);
    case TransformKind::MorletDirect:
      return morlet_direct_effective_taps(*spec.morlet_coeffs, *spec.morlet, spec.n0);
    case TransformKind::MorletMultiply:
      return morlet_multiply_effective_taps(*spec.envelope_coeffs, *spec.morlet, spec.n0);
    case TransformKind::TruncConvGauss:
      return sample_gauss(*spec.gaussian);
    case TransformKind::TruncConvMorlet:
      return sample_morlet(*spec.morlet);
  }
  throw std::invalid_argument("effective_kernel: unknown kind");
}

}  // namespace sft
