#include "sft/fourier_fit.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "sft/metrics.hpp"

namespace sft {
namespace {

Eigen::MatrixXd design_matrix(const HarmonicGrid& grid,
                              const Eigen::Ref<const Eigen::ArrayXd>& points) {
  const auto rows = points.size();
  const auto cols = static_cast<Eigen::Index>(grid.basis_size());
  Eigen::MatrixXd design(rows, cols);
  Eigen::Index col = 0;
  for (int p : grid.cos_orders)
    design.col(col++) = (grid.beta * p * points).cos().matrix();
  for (int p : grid.sin_orders)
    design.col(col++) = (grid.beta * p * points).sin().matrix();
  return design;
}

Eigen::ArrayXd fit_nodes(const HarmonicGrid& grid) {
  return Eigen::ArrayXd::LinSpaced(2 * grid.half_width + 1, -grid.half_width, grid.half_width);
}

struct GramSolver {
  Eigen::LDLT<Eigen::MatrixXd> ldlt;

  explicit GramSolver(const Eigen::MatrixXd& design) {
    const Eigen::MatrixXd gram = design.transpose() * design;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > 1e12)
      throw FitDegenerateError("fit_mmse: Gram matrix condition estimate exceeds 1e12");
    ldlt.compute(gram);
  }

  Eigen::VectorXd solve(const Eigen::MatrixXd& design, const Eigen::ArrayXd& target) const {
    return ldlt.solve(design.transpose() * target.matrix());
  }
};

double residual_percent(const Eigen::ArrayXcd& resid, double target_norm2) {
  if (!(target_norm2 > 0.0)) return 0.0;
  return std::sqrt(resid.abs2().sum() / target_norm2) * 100.0;
}

}  // namespace

const char* coeff_kind_name(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::GaussCos: return "GaussCos";
    case CoeffKind::GaussDerivSin: return "GaussDerivSin";
    case CoeffKind::GaussDeriv2Cos: return "GaussDeriv2Cos";
    case CoeffKind::MorletDirect: return "MorletDirect";
    case CoeffKind::MorletMultiply: return "MorletMultiply";
  }
  return "?";
}

CoeffKind coeff_kind_from_name(const std::string& name) {
  for (CoeffKind kind : {CoeffKind::GaussCos, CoeffKind::GaussDerivSin, CoeffKind::GaussDeriv2Cos,
                         CoeffKind::MorletDirect, CoeffKind::MorletMultiply})
    if (name == coeff_kind_name(kind)) return kind;
  throw std::invalid_argument("unknown coefficient kind: " + name);
}

CoefficientSet fit_mmse(const Eigen::Ref<const Eigen::ArrayXd>& target,
                        const HarmonicGrid& grid, CoeffKind kind) {
  Eigen::ArrayXcd complex_target = target.cast<std::complex<double>>();
  return fit_mmse(complex_target, grid, kind);
}

CoefficientSet fit_mmse(const Eigen::Ref<const Eigen::ArrayXcd>& target,
                        const HarmonicGrid& grid, CoeffKind kind) {
  const Eigen::ArrayXd nodes = fit_nodes(grid);
  if (target.size() != nodes.size())
    throw std::invalid_argument("fit_mmse: target must be sampled on [-K, K]");
  if (!target.isFinite().all()) throw std::invalid_argument("fit_mmse: target must be finite");

  const Eigen::MatrixXd design = design_matrix(grid, nodes);
  const GramSolver solver(design);
  const Eigen::VectorXd re = solver.solve(design, target.real());
  const Eigen::VectorXd im = solver.solve(design, target.imag());

  CoefficientSet out{kind, grid, {}, {}, 0.0, 0.0, 0.0, 0};
  const auto nc = static_cast<Eigen::Index>(grid.cos_orders.size());
  const auto ns = static_cast<Eigen::Index>(grid.sin_orders.size());
  out.cos_coeffs.resize(nc);
  out.cos_coeffs.real() = re.head(nc);
  out.cos_coeffs.imag() = im.head(nc);
  out.sin_coeffs.resize(ns);
  out.sin_coeffs.real() = re.tail(ns);
  out.sin_coeffs.imag() = im.tail(ns);

  Eigen::ArrayXcd recon(target.size());
  recon.real() = (design * re).array();
  recon.imag() = (design * im).array();
  out.fit_rmse_percent = residual_percent(recon - target, target.abs2().sum());
  return out;
}

Eigen::ArrayXcd reconstruct(const CoefficientSet& coeffs,
                            const Eigen::Ref<const Eigen::ArrayXd>& points) {
  Eigen::ArrayXd re = Eigen::ArrayXd::Zero(points.size());
  Eigen::ArrayXd im = Eigen::ArrayXd::Zero(points.size());
  Eigen::Index i = 0;
  for (int p : coeffs.grid.cos_orders) {
    const Eigen::ArrayXd basis = (coeffs.grid.beta * p * points).cos();
    re += coeffs.cos_coeffs[i].real() * basis;
    im += coeffs.cos_coeffs[i].imag() * basis;
    ++i;
  }
  i = 0;
  for (int p : coeffs.grid.sin_orders) {
    const Eigen::ArrayXd basis = (coeffs.grid.beta * p * points).sin();
    re += coeffs.sin_coeffs[i].real() * basis;
    im += coeffs.sin_coeffs[i].imag() * basis;
    ++i;
  }
  Eigen::ArrayXcd out(points.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

GaussianFitBundle fit_gaussian_bundle(const GaussianParams& params, int max_order, double beta) {
  if (max_order < 1) throw std::invalid_argument("fit_gaussian_bundle: P must be >= 1");
  const int k = params.half_width;
  std::vector<int> cos_orders(max_order + 1);
  std::vector<int> sin_orders(max_order);
  for (int p = 0; p <= max_order; ++p) cos_orders[p] = p;
  for (int p = 1; p <= max_order; ++p) sin_orders[p - 1] = p;
  const HarmonicGrid cos_grid(k, beta, cos_orders, {});
  const HarmonicGrid sin_grid(k, beta, {}, sin_orders);

  const Eigen::ArrayXd nodes = fit_nodes(cos_grid);
  Eigen::ArrayXd g(nodes.size()), gd(nodes.size()), gdd(nodes.size());
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    g[i] = gauss(params, nodes[i]);
    gd[i] = gauss_d(params, nodes[i]);
    gdd[i] = gauss_dd(params, nodes[i]);
  }

  const CoefficientSet fa = fit_mmse(g, cos_grid, CoeffKind::GaussCos);
  const CoefficientSet fb = fit_mmse(gd, sin_grid, CoeffKind::GaussDerivSin);
  const CoefficientSet fd = fit_mmse(gdd, cos_grid, CoeffKind::GaussDeriv2Cos);

  GaussianFitBundle bundle{params, beta, max_order, {}, {}, {}, 0, 0, 0};
  bundle.a = fa.cos_coeffs.real();
  bundle.b = fb.sin_coeffs.real();
  bundle.d = fd.cos_coeffs.real();
  bundle.fit_rmse_g = fa.fit_rmse_percent;
  bundle.fit_rmse_gd = fb.fit_rmse_percent;
  bundle.fit_rmse_gdd = fd.fit_rmse_percent;
  return bundle;
}

namespace {

// Series value sum_p a_p cos(beta p q) (or b_p sin) at real points.
Eigen::ArrayXd cos_series(const Eigen::VectorXd& coeff, double beta,
                          const Eigen::Ref<const Eigen::ArrayXd>& q) {
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(q.size());
  for (Eigen::Index p = 0; p < coeff.size(); ++p)
    out += coeff[p] * (beta * static_cast<double>(p) * q).cos();
  return out;
}

Eigen::ArrayXd sin_series(const Eigen::VectorXd& coeff, double beta,
                          const Eigen::Ref<const Eigen::ArrayXd>& q) {
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(q.size());
  for (Eigen::Index p = 0; p < coeff.size(); ++p)
    out += coeff[p] * (beta * static_cast<double>(p + 1) * q).sin();
  return out;
}

}  // namespace

KernelTaps gauss_effective_taps(const GaussianFitBundle& bundle, GaussKind kind, int n0) {
  const int k = bundle.params.half_width;
  const double alpha = 2.0 * bundle.params.gamma() * n0;
  const double prefactor = std::exp(-alpha * alpha / (4.0 * bundle.params.gamma()));
  const Eigen::ArrayXd q = Eigen::ArrayXd::LinSpaced(2 * k + 1, -k, k);

  Eigen::ArrayXd mix;
  switch (kind) {
    case GaussKind::Value:
      mix = cos_series(bundle.a, bundle.beta, q);
      break;
    case GaussKind::Deriv1:
      mix = sin_series(bundle.b, bundle.beta, q);
      if (n0 != 0) mix -= alpha * cos_series(bundle.a, bundle.beta, q);
      break;
    case GaussKind::Deriv2:
      mix = cos_series(bundle.d, bundle.beta, q);
      if (n0 != 0)
        mix += alpha * alpha * cos_series(bundle.a, bundle.beta, q) -
               2.0 * alpha * sin_series(bundle.b, bundle.beta, q);
      break;
  }
  if (n0 != 0) mix *= prefactor * (-alpha * q).exp();
  KernelTaps taps;
  taps.taps = mix.cast<std::complex<double>>();
  taps.lo = -k + n0;  // support [-K+n0, K+n0]: the window read at n-n0
  return taps;
}

namespace {

Eigen::ArrayXcd morlet_asft_target(const MorletParams& params, int n0,
                                   const Eigen::Ref<const Eigen::ArrayXd>& q) {
  const double env_scale = params.c_xi() / (std::pow(M_PI, 0.25) * std::sqrt(params.sigma));
  const Eigen::ArrayXd env = env_scale * (-params.gamma() * q.square()).exp();
  const Eigen::ArrayXd phase = params.xi * (q + static_cast<double>(n0)) / params.sigma;
  Eigen::ArrayXcd carrier(q.size());
  carrier.real() = phase.cos() - params.kappa_xi();
  carrier.imag() = phase.sin();
  return env * carrier;
}

KernelTaps asft_weighted_taps(const Eigen::ArrayXcd& series_on_q, const GaussianParams& like,
                              int n0) {
  const int k = like.half_width;
  const double alpha = 2.0 * like.gamma() * n0;
  const double prefactor = std::exp(-alpha * alpha / (4.0 * like.gamma()));
  const Eigen::ArrayXd q = Eigen::ArrayXd::LinSpaced(2 * k + 1, -k, k);
  KernelTaps taps;
  taps.taps = series_on_q * (prefactor * (-alpha * q).exp()).cast<std::complex<double>>();
  taps.lo = -k + n0;
  return taps;
}

}  // namespace

KernelTaps morlet_direct_effective_taps(const CoefficientSet& coeffs, const MorletParams& params,
                                        int n0) {
  const int k = coeffs.grid.half_width;
  const Eigen::ArrayXd q = Eigen::ArrayXd::LinSpaced(2 * k + 1, -k, k);
  const Eigen::ArrayXcd series = reconstruct(coeffs, q);
  if (n0 == 0) return {series, -k};
  return asft_weighted_taps(series, GaussianParams(params.sigma, k), n0);
}

KernelTaps morlet_multiply_effective_taps(const CoefficientSet& envelope,
                                          const MorletParams& params, int n0) {
  const int k = envelope.grid.half_width;
  const Eigen::ArrayXd q = Eigen::ArrayXd::LinSpaced(2 * k + 1, -k, k);
  const Eigen::ArrayXd env_hat = reconstruct(envelope, q).real();
  const Eigen::ArrayXd phase = params.xi * (q + static_cast<double>(n0)) / params.sigma;
  Eigen::ArrayXcd carrier(q.size());
  carrier.real() = phase.cos() - params.kappa_xi();
  carrier.imag() = phase.sin();
  const Eigen::ArrayXcd series = env_hat * carrier;
  if (n0 == 0) return {series, -k};
  return asft_weighted_taps(series, GaussianParams(params.sigma, k), n0);
}

namespace {

double kernel_rmse_against(const KernelTaps& taps, int eval_half,
                           const std::function<std::complex<double>(double)>& truth) {
  Eigen::ArrayXcd approx = Eigen::ArrayXcd::Zero(2 * eval_half + 1);
  Eigen::ArrayXcd exact(2 * eval_half + 1);
  for (int n = -eval_half; n <= eval_half; ++n) {
    exact[n + eval_half] = truth(n);
    if (n >= taps.lo && n <= taps.hi()) approx[n + eval_half] = taps.taps[n - taps.lo];
  }
  return relative_rmse(approx, exact);
}

}  // namespace

double gauss_kernel_rmse(const GaussianFitBundle& bundle, GaussKind kind, int n0) {
  const KernelTaps taps = gauss_effective_taps(bundle, kind, n0);
  const GaussianParams& p = bundle.params;
  const int eval_half = 3 * p.half_width;
  switch (kind) {
    case GaussKind::Value:
      return kernel_rmse_against(taps, eval_half, [&](double n) { return gauss(p, n); });
    case GaussKind::Deriv1:
      return kernel_rmse_against(taps, eval_half, [&](double n) { return gauss_d(p, n); });
    case GaussKind::Deriv2:
      return kernel_rmse_against(taps, eval_half, [&](double n) { return gauss_dd(p, n); });
  }
  return 0.0;
}

CoefficientSet fit_morlet_direct(const MorletParams& params, int ps, int pd, double beta,
                                 int n0) {
  if (ps < 0 || pd < 1) throw std::invalid_argument("fit_morlet_direct: need P_S >= 0, P_D >= 1");
  const int k = params.half_width;
  std::vector<int> cos_orders;
  std::vector<int> sin_orders;
  for (int p = ps; p < ps + pd; ++p) {
    cos_orders.push_back(p);
    if (p > 0) sin_orders.push_back(p);
  }
  const Eigen::ArrayXd nodes = Eigen::ArrayXd::LinSpaced(2 * k + 1, -k, k);

  CoefficientSet coeffs{CoeffKind::MorletDirect, HarmonicGrid(k, beta, cos_orders, sin_orders),
                        {}, {}, 0.0, params.sigma, params.xi, n0};
  if (n0 == 0) {
    // Re(psi) is even, Im(psi) odd: cosines carry the real part, sines the
    // imaginary part (the m_p, l_p coefficient pairs).
    Eigen::ArrayXd re(nodes.size()), im(nodes.size());
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
      const std::complex<double> v = morlet(params, nodes[i]);
      re[i] = v.real();
      im[i] = v.imag();
    }
    const CoefficientSet fc = fit_mmse(re, HarmonicGrid(k, beta, cos_orders, {}),
                                       CoeffKind::MorletDirect);
    coeffs.cos_coeffs = fc.cos_coeffs;
    coeffs.sin_coeffs.resize(static_cast<Eigen::Index>(sin_orders.size()));
    if (!sin_orders.empty()) {
      const CoefficientSet fs =
          fit_mmse(im, HarmonicGrid(k, beta, {}, sin_orders), CoeffKind::MorletDirect);
      coeffs.sin_coeffs.real().setZero();
      coeffs.sin_coeffs.imag() = fs.sin_coeffs.real();  // i * l_p
    }
    Eigen::ArrayXcd target(nodes.size());
    target.real() = re;
    target.imag() = im;
    coeffs.fit_rmse_percent = relative_rmse(Eigen::ArrayXcd(reconstruct(coeffs, nodes)), target);
    return coeffs;
  }
  // ASFT: the attenuated window realizes the carrier-advanced kernel, which
  // has no parity, so both parts use the full cos+sin basis.
  const Eigen::ArrayXcd target = morlet_asft_target(params, n0, nodes);
  CoefficientSet fit = fit_mmse(target, coeffs.grid, CoeffKind::MorletDirect);
  fit.sigma = params.sigma;
  fit.xi = params.xi;
  fit.n0 = n0;
  return fit;
}

CoefficientSet fit_morlet_envelope(const MorletParams& params, int max_order, double beta) {
  if (max_order < 1) throw std::invalid_argument("fit_morlet_envelope: P must be >= 1");
  const int k = params.half_width;
  std::vector<int> cos_orders(max_order + 1);
  for (int p = 0; p <= max_order; ++p) cos_orders[p] = p;
  const HarmonicGrid grid(k, beta, cos_orders, {});
  const Eigen::ArrayXd nodes = Eigen::ArrayXd::LinSpaced(2 * k + 1, -k, k);
  const double env_scale = params.c_xi() / (std::pow(M_PI, 0.25) * std::sqrt(params.sigma));
  const Eigen::ArrayXd env = env_scale * (-params.gamma() * nodes.square()).exp();
  CoefficientSet fit = fit_mmse(env, grid, CoeffKind::MorletMultiply);
  fit.sigma = params.sigma;
  fit.xi = params.xi;
  return fit;
}

double morlet_direct_kernel_rmse(const MorletParams& params, int ps, int pd, int n0,
                                 CoefficientSet* out_coeffs) {
  const CoefficientSet coeffs =
      fit_morlet_direct(params, ps, pd, M_PI / params.half_width, n0);
  const KernelTaps taps = morlet_direct_effective_taps(coeffs, params, n0);
  const double rmse = kernel_rmse_against(taps, 5 * params.half_width,
                                          [&](double n) { return morlet(params, n); });
  if (out_coeffs) *out_coeffs = coeffs;
  return rmse;
}

double morlet_multiply_kernel_rmse(const MorletParams& params, int pm, int n0,
                                   CoefficientSet* out_coeffs) {
  const CoefficientSet envelope =
      fit_morlet_envelope(params, pm, M_PI / params.half_width);
  const KernelTaps taps = morlet_multiply_effective_taps(envelope, params, n0);
  const double rmse = kernel_rmse_against(taps, 5 * params.half_width,
                                          [&](double n) { return morlet(params, n); });
  if (out_coeffs) *out_coeffs = envelope;
  return rmse;
}

int select_optimal_ps(const MorletParams& params, int pd, int n0) {
  if (pd < 1) throw std::invalid_argument("select_optimal_ps: P_D must be >= 1");
  const int hi =
      static_cast<int>(std::ceil(params.half_width * params.xi / (M_PI * params.sigma))) + pd;
  int best_ps = 0;
  double best = -1.0;
  for (int ps = 0; ps <= hi; ++ps) {
    const double rmse = morlet_direct_kernel_rmse(params, ps, pd, n0);
    if (best < 0.0 || rmse < best - 1e-12) {
      best = rmse;
      best_ps = ps;
    }
  }
  return best_ps;
}

BetaTuneResult tune_beta(const std::function<double(double)>& rmse_of_beta, int half_width) {
  const double base = M_PI / half_width;
  const double lo = 0.5 * base;
  const double hi = 1.5 * base;
  constexpr int kPrescan = 33;

  int best_i = 0;
  double best_v = 0.0;
  auto at = [&](int i) { return lo + (hi - lo) * i / (kPrescan - 1); };
  for (int i = 0; i < kPrescan; ++i) {
    const double v = rmse_of_beta(at(i));
    if (i == 0 || v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  double a = at(std::max(0, best_i - 1));
  double b = at(std::min(kPrescan - 1, best_i + 1));

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = rmse_of_beta(c);
  double fd = rmse_of_beta(d);
  while (b - a > 1e-4 * b) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = rmse_of_beta(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = rmse_of_beta(d);
    }
  }
  BetaTuneResult result;
  result.beta = 0.5 * (a + b);
  result.rmse_percent = rmse_of_beta(result.beta);
  return result;
}

BetaTuneResult tune_beta_gauss(const GaussianParams& params, int max_order, int n0) {
  return tune_beta(
      [&](double beta) {
        return gauss_kernel_rmse(fit_gaussian_bundle(params, max_order, beta), GaussKind::Value,
                                 n0);
      },
      params.half_width);
}

}  // namespace sft
