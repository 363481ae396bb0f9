#include "sft/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sft/coeff_io.hpp"
#include "sft/metrics.hpp"
#include "sft/eval.hpp"
#include "sft/signal.hpp"
#include "sft/sliding_sum.hpp"
#include "sft/transforms.hpp"

namespace sft {
namespace {

std::string full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Strategy strategy_from(const std::string& name) {
  if (name == "kernel") return Strategy::KernelIntegral;
  if (name == "rec1") return Strategy::Recursive1;
  if (name == "rec2") return Strategy::Recursive2;
  throw CLI::ValidationError("--strategy", "expected kernel, rec1 or rec2");
}

Precision precision_from(const std::string& name) {
  if (name == "single") return Precision::Single;
  if (name == "double") return Precision::Double;
  throw CLI::ValidationError("--precision", "expected single or double");
}

Signal read_signal_file(const std::string& path, BoundaryPolicy boundary) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<double> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    double value = 0.0;
    row >> value;
    if (row.fail() || !std::isfinite(value))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": not a finite sample value");
    samples.push_back(value);
  }
  if (samples.empty()) throw std::runtime_error(path + ": no samples");
  Eigen::ArrayXd data =
      Eigen::Map<const Eigen::ArrayXd>(samples.data(), static_cast<Eigen::Index>(samples.size()));
  return Signal(std::move(data), boundary);
}

struct SignalCliArgs {
  std::string input_path;
  std::string generator;
  std::int64_t size = 0;
  std::uint64_t seed = 42;
  std::string boundary = "clamp";

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input_path, "signal file, one sample per line");
    cmd->add_option("--gen", generator, "test signal: impulse, constant, chirp or noise");
    cmd->add_option("--N", size, "generated signal length");
    cmd->add_option("--seed", seed, "generator seed");
    cmd->add_option("--boundary", boundary, "boundary policy: clamp or zero")
        ->check(CLI::IsMember({"clamp", "zero"}));
  }

  Signal load() const {
    const BoundaryPolicy policy =
        boundary == "zero" ? BoundaryPolicy::Zero : BoundaryPolicy::Clamp;
    if (!input_path.empty()) return read_signal_file(input_path, policy);
    if (generator.empty())
      throw CLI::ValidationError("--input/--gen", "need an input file or a generator");
    if (size < 1) throw CLI::ValidationError("--N", "generated length must be >= 1");
    TestSignalKind kind;
    if (generator == "impulse") kind = TestSignalKind::Impulse;
    else if (generator == "constant") kind = TestSignalKind::Constant;
    else if (generator == "chirp") kind = TestSignalKind::Chirp;
    else if (generator == "noise") kind = TestSignalKind::SeededNoise;
    else throw CLI::ValidationError("--gen", "expected impulse, constant, chirp or noise");
    return make_test_signal(kind, size, seed, policy);
  }
};

KernelTaps true_kernel_taps(const TransformSpec& spec) {
  switch (spec.kind) {
    case TransformKind::Gauss: return sample_gauss(*spec.gaussian);
    case TransformKind::GaussD: return sample_gauss_d(*spec.gaussian);
    case TransformKind::GaussDD: return sample_gauss_dd(*spec.gaussian);
    case TransformKind::MorletDirect:
    case TransformKind::MorletMultiply:
    case TransformKind::TruncConvMorlet:
      return sample_morlet(*spec.morlet);
    case TransformKind::TruncConvGauss: return sample_gauss(*spec.gaussian);
  }
  throw std::invalid_argument("true_kernel_taps: unknown kind");
}

int cmd_fit(const std::string& kernel, double sigma, double xi, std::optional<int> half_width,
            int max_order, int pd, std::optional<int> ps, int n0, bool tune,
            std::optional<double> beta, const std::string& method, const std::string& out_path) {
  TransformOptions options;
  options.half_width = half_width;
  options.tune_beta = tune;
  if (beta) options.beta = *beta;
  options.ps = ps;

  std::vector<CoefficientSet> sets;
  double reported_rmse = 0.0;
  std::string label;
  if (kernel == "gauss" || kernel == "gauss-d" || kernel == "gauss-dd") {
    const GaussKind kind = kernel == "gauss" ? GaussKind::Value
                                             : (kernel == "gauss-d" ? GaussKind::Deriv1
                                                                    : GaussKind::Deriv2);
    const TransformSpec spec = make_gauss_spec(sigma, kind, max_order, n0, options);
    const GaussianFitBundle& bundle = *spec.gauss_coeffs;
    const HarmonicGrid cos_grid(bundle.params.half_width, bundle.beta,
                                [&] {
                                  std::vector<int> orders(bundle.max_order + 1);
                                  for (int p = 0; p <= bundle.max_order; ++p) orders[p] = p;
                                  return orders;
                                }(),
                                {});
    const HarmonicGrid sin_grid(bundle.params.half_width, bundle.beta, {},
                                [&] {
                                  std::vector<int> orders(bundle.max_order);
                                  for (int p = 1; p <= bundle.max_order; ++p) orders[p - 1] = p;
                                  return orders;
                                }());
    CoefficientSet a{CoeffKind::GaussCos, cos_grid, bundle.a.cast<std::complex<double>>(), {},
                     bundle.fit_rmse_g, sigma, 0.0, n0};
    CoefficientSet b{CoeffKind::GaussDerivSin, sin_grid, {},
                     bundle.b.cast<std::complex<double>>(), bundle.fit_rmse_gd, sigma, 0.0, n0};
    CoefficientSet d{CoeffKind::GaussDeriv2Cos, cos_grid,
                     bundle.d.cast<std::complex<double>>(), {}, bundle.fit_rmse_gdd, sigma, 0.0,
                     n0};
    sets = {a, b, d};
    reported_rmse = spec.kernel_rmse_percent;
    label = spec.abbreviation;
  } else if (kernel == "morlet") {
    if (method == "multiply") {
      const TransformSpec spec = make_morlet_multiply_spec(sigma, xi, max_order, n0, options);
      sets = {*spec.envelope_coeffs};
      reported_rmse = spec.kernel_rmse_percent;
      label = spec.abbreviation;
    } else {
      const TransformSpec spec = make_morlet_direct_spec(sigma, xi, pd, n0, options);
      sets = {*spec.morlet_coeffs};
      reported_rmse = spec.kernel_rmse_percent;
      label = spec.abbreviation;
      std::cout << "selected P_S = " << spec.ps << "\n";
    }
  } else {
    throw CLI::ValidationError("--kernel", "expected gauss, gauss-d, gauss-dd or morlet");
  }

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  write_coefficient_sets(out, sets);
  std::cout << label << ": kernel relative RMSE " << full(reported_rmse)
            << " % (fit-grid residual " << full(sets.front().fit_rmse_percent) << " %)\n";
  return 0;
}

TransformSpec build_transform_spec(const std::string& abbrev, const std::string& kernel,
                                   double sigma, double xi, std::optional<int> half_width,
                                   int max_order, int pd, std::optional<int> ps, int n0,
                                   bool tune, std::optional<double> beta,
                                   const std::string& strategy, const std::string& precision) {
  TransformOptions options;
  options.half_width = half_width;
  options.tune_beta = tune;
  if (beta) options.beta = *beta;
  options.ps = ps;
  options.strategy = strategy_from(strategy);
  options.precision = precision_from(precision);
  if (!abbrev.empty()) return make_transform_spec(abbrev, sigma, xi, options);
  if (kernel == "gauss") return make_gauss_spec(sigma, GaussKind::Value, max_order, n0, options);
  if (kernel == "gauss-d")
    return make_gauss_spec(sigma, GaussKind::Deriv1, max_order, n0, options);
  if (kernel == "gauss-dd")
    return make_gauss_spec(sigma, GaussKind::Deriv2, max_order, n0, options);
  if (kernel == "morlet") return make_morlet_direct_spec(sigma, xi, pd, n0, options);
  if (kernel == "morlet-multiply")
    return make_morlet_multiply_spec(sigma, xi, max_order, n0, options);
  throw CLI::ValidationError("--abbrev/--kernel", "need a filter abbreviation or kernel name");
}

double recomputed_kernel_rmse(const TransformSpec& spec) {
  const KernelTaps taps = effective_kernel(spec);
  const bool morlet_kind = spec.kind == TransformKind::MorletDirect ||
                           spec.kind == TransformKind::MorletMultiply;
  const int k = spec.gaussian ? spec.gaussian->half_width : spec.morlet->half_width;
  const int eval_half = (morlet_kind ? 5 : 3) * k;
  Eigen::ArrayXcd approx = Eigen::ArrayXcd::Zero(2 * eval_half + 1);
  Eigen::ArrayXcd truth(2 * eval_half + 1);
  for (int n = -eval_half; n <= eval_half; ++n) {
    if (morlet_kind) {
      truth[n + eval_half] = morlet(*spec.morlet, n);
    } else if (spec.kind == TransformKind::Gauss) {
      truth[n + eval_half] = gauss(*spec.gaussian, n);
    } else if (spec.kind == TransformKind::GaussD) {
      truth[n + eval_half] = gauss_d(*spec.gaussian, n);
    } else {
      truth[n + eval_half] = gauss_dd(*spec.gaussian, n);
    }
    if (n >= taps.lo && n <= taps.hi()) approx[n + eval_half] = taps.taps[n - taps.lo];
  }
  return relative_rmse(approx, truth);
}

void substitute_coefficients(TransformSpec& spec, const std::string& coeff_path) {
  std::ifstream in(coeff_path);
  if (!in) throw std::runtime_error("cannot open coefficient file: " + coeff_path);
  const std::vector<CoefficientSet> sets = read_coefficient_sets(in);
  auto find = [&](CoeffKind kind) -> const CoefficientSet* {
    for (const CoefficientSet& set : sets)
      if (set.kind == kind) return &set;
    return nullptr;
  };
  auto require_match = [&](const CoefficientSet& set) {
    const int k = spec.gaussian ? spec.gaussian->half_width : spec.morlet->half_width;
    const double sigma = spec.gaussian ? spec.gaussian->sigma : spec.morlet->sigma;
    if (set.grid.half_width != k || std::abs(set.sigma - sigma) > 1e-9 * sigma ||
        set.n0 != spec.n0)
      throw std::runtime_error("coefficient file does not match the requested transform");
  };
  switch (spec.kind) {
    case TransformKind::Gauss:
    case TransformKind::GaussD:
    case TransformKind::GaussDD: {
      const CoefficientSet* a = find(CoeffKind::GaussCos);
      const CoefficientSet* b = find(CoeffKind::GaussDerivSin);
      const CoefficientSet* d = find(CoeffKind::GaussDeriv2Cos);
      if (!a || !b || !d)
        throw std::runtime_error("coefficient file lacks the Gaussian sets");
      require_match(*a);
      GaussianFitBundle& bundle = *spec.gauss_coeffs;
      if (a->grid.cos_orders.size() != static_cast<std::size_t>(bundle.max_order) + 1)
        throw std::runtime_error("coefficient file has a different order count");
      spec.beta = a->grid.beta;
      bundle.beta = a->grid.beta;
      bundle.a = a->cos_coeffs.real();
      bundle.b = b->sin_coeffs.real();
      bundle.d = d->cos_coeffs.real();
      break;
    }
    case TransformKind::MorletDirect: {
      const CoefficientSet* m = find(CoeffKind::MorletDirect);
      if (!m) throw std::runtime_error("coefficient file lacks a MorletDirect set");
      require_match(*m);
      spec.beta = m->grid.beta;
      spec.morlet_coeffs = *m;
      break;
    }
    case TransformKind::MorletMultiply: {
      const CoefficientSet* e = find(CoeffKind::MorletMultiply);
      if (!e) throw std::runtime_error("coefficient file lacks a MorletMultiply set");
      require_match(*e);
      spec.beta = e->grid.beta;
      spec.envelope_coeffs = *e;
      break;
    }
    default:
      throw std::runtime_error("--coeffs is not applicable to truncated-convolution filters");
  }
  spec.kernel_rmse_percent = recomputed_kernel_rmse(spec);
}

int cmd_transform(const TransformSpec& spec, const Signal& sig, const std::string& out_path,
                  bool with_oracle, int workers) {
  const TransformResult result = apply_transform(sig, spec, workers);

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);

  Eigen::ArrayXcd oracle;
  double oracle_peak = 0.0;
  if (with_oracle) {
    oracle = truncated_convolution(sig, true_kernel_taps(spec), workers);
    oracle_peak = oracle.abs().maxCoeff();
    if (oracle_peak == 0.0) oracle_peak = 1.0;
  }

  if (result.complex_valued) {
    out << (with_oracle ? "n,re,im,oracle_re,oracle_im,rel_err\n" : "n,re,im\n");
  } else {
    out << (with_oracle ? "n,value,oracle,rel_err\n" : "n,value\n");
  }
  for (Eigen::Index n = 0; n < result.values.size(); ++n) {
    out << n;
    if (result.complex_valued)
      out << ',' << full(result.values[n].real()) << ',' << full(result.values[n].imag());
    else
      out << ',' << full(result.values[n].real());
    if (with_oracle) {
      if (result.complex_valued)
        out << ',' << full(oracle[n].real()) << ',' << full(oracle[n].imag());
      else
        out << ',' << full(oracle[n].real());
      out << ',' << full(std::abs(result.values[n] - oracle[n]) / oracle_peak);
    }
    out << '\n';
  }
  std::cout << result.abbreviation << ": wrote " << result.values.size() << " samples to "
            << out_path << " (kernel RMSE " << full(result.kernel_rmse_percent) << " %)\n";
  return 0;
}

int cmd_rmse_table(int half_width, int n0, const std::string& csv_path) {
  const std::vector<RmseReport> reports = table1_experiment(half_width, n0);
  std::printf("%-6s %-3s %12s %12s %12s   (K=%d, ASFT n0=%d)\n", "variant", "P", "e(G) %",
              "e(G_D) %", "e(G_DD) %", half_width, n0);
  for (std::size_t i = 0; i < reports.size(); i += 3) {
    const RmseReport& g = reports[i];
    std::printf("%-6s %-3d %12.4g %12.4g %12.4g\n", g.variant.c_str(), g.max_order,
                g.rmse_percent, reports[i + 1].rmse_percent, reports[i + 2].rmse_percent);
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open output file: " + csv_path);
    write_rmse_csv(out, reports);
  }
  return 0;
}

int cmd_morlet_sweep(double sigma, double xi_min, double xi_max, double xi_step,
                     const std::string& method, int pd, int pm, int n0,
                     const std::string& csv_path) {
  std::vector<double> xis;
  for (double xi = xi_min; xi <= xi_max + 1e-9; xi += xi_step) xis.push_back(xi);
  std::vector<RmseReport> reports;
  if (method == "direct" || method == "both") {
    auto r = morlet_rmse_sweep(sigma, xis, true, pd, n0);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  if (method == "multiply" || method == "both") {
    auto r = morlet_rmse_sweep(sigma, xis, false, pm, n0);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  if (method != "direct" && method != "multiply" && method != "both")
    throw CLI::ValidationError("--method", "expected direct, multiply or both");
  for (const RmseReport& report : reports)
    std::printf("%-10s xi=%-5.3g K=%-4d P_S=%-3d rmse=%.5g %%\n", report.abbreviation.c_str(),
                report.xi, report.half_width, report.ps, report.rmse_percent);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open output file: " + csv_path);
    write_rmse_csv(out, reports);
  }
  return 0;
}

int cmd_bench(const std::string& mode, std::int64_t fixed_n, double fixed_sigma, int reps,
              int warmups, int workers, const std::string& precision,
              const std::string& csv_path) {
  std::vector<std::pair<std::int64_t, double>> grid;
  if (mode == "n-sweep") {
    for (std::int64_t n = 100; n <= fixed_n; n *= 2) grid.emplace_back(n, fixed_sigma);
    if (grid.empty() || grid.back().first != fixed_n) grid.emplace_back(fixed_n, fixed_sigma);
  } else if (mode == "sigma-sweep") {
    for (double sigma = 16.0; sigma <= fixed_sigma + 1e-9; sigma *= 2)
      grid.emplace_back(fixed_n, sigma);
  } else {
    throw CLI::ValidationError("--mode", "expected n-sweep or sigma-sweep");
  }
  const std::vector<BenchRow> rows =
      bench_sft_vs_conv(grid, reps, warmups, workers, precision_from(precision));
  for (const BenchRow& row : rows)
    std::printf("%-5s N=%-8lld sigma=%-8.5g median=%.3f ms  model_mults=%lld\n",
                row.method.c_str(), static_cast<long long>(row.size), row.sigma,
                row.median_ns / 1e6, static_cast<long long>(row.model_mults));
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open output file: " + csv_path);
    write_bench_csv(out, rows);
  }
  return 0;
}

int cmd_sliding_sum_trace(std::int64_t size, std::int64_t window, const std::string& variant,
                          int workers, std::uint64_t seed, const std::string& csv_path) {
  const Signal sig = make_test_signal(TestSignalKind::SeededNoise, size, seed);
  RoundTrace trace;
  if (variant == "flat") {
    sliding_sum_flat<double>(sig.samples, window, workers, &trace);
  } else if (variant == "blocked8") {
    sliding_sum_blocked8<double>(sig.samples, window, workers, &trace);
  } else {
    throw CLI::ValidationError("--variant", "expected flat or blocked8");
  }
  const SlidingSumPlan plan = SlidingSumPlan::make(
      size, window, variant == "flat" ? SsVariant::FlatDoubling : SsVariant::Blocked8);
  const CostReport cost = cost_model(plan);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!csv_path.empty()) {
    file.open(csv_path);
    if (!file) throw std::runtime_error("cannot open output file: " + csv_path);
    os = &file;
  }
  *os << "round,r,bit,active_span,adds\n";
  for (const RoundRecord& rec : trace.rounds)
    *os << rec.round << ',' << rec.r << ',' << rec.bit << ',' << rec.active << ',' << rec.adds
        << '\n';
  std::cout << "rounds=" << trace.rounds.size() << " total_adds=" << trace.total_adds()
            << " model_adds=" << cost.total_adds << " parallel_steps=" << cost.parallel_steps
            << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"sliding-Fourier Gaussian and Morlet filtering toolkit"};
  app.require_subcommand(1);

  // ---- fit ----
  auto* fit = app.add_subcommand("fit", "fit kernel coefficients and write them to a file");
  std::string fit_kernel = "gauss", fit_method = "direct", fit_out;
  double fit_sigma = 16.0, fit_xi = 10.0;
  std::optional<int> fit_k;
  std::optional<double> fit_beta;
  std::optional<int> fit_ps;
  int fit_p = 4, fit_pd = 6, fit_n0 = 0;
  bool fit_tune = false, fit_auto_ps = false;
  fit->add_option("--kernel", fit_kernel, "gauss, gauss-d, gauss-dd or morlet")->required();
  fit->add_option("--sigma", fit_sigma, "kernel scale")->required();
  fit->add_option("--xi", fit_xi, "Morlet center frequency");
  fit->add_option("--K", fit_k, "window half-width (default ceil(3 sigma))");
  fit->add_option("--P", fit_p, "max order (Gauss) or P_M (multiply)");
  fit->add_option("--PD", fit_pd, "direct-method order count");
  fit->add_option("--PS", fit_ps, "direct-method start order");
  fit->add_flag("--auto-PS", fit_auto_ps, "select P_S by scanning (default when --PS absent)");
  fit->add_option("--n0", fit_n0, "ASFT shift (0 = plain SFT)");
  fit->add_flag("--tune-beta", fit_tune, "tune beta for minimal kernel RMSE");
  fit->add_option("--beta", fit_beta, "fix beta explicitly");
  fit->add_option("--method", fit_method, "morlet method: direct or multiply");
  fit->add_option("--out", fit_out, "output coefficient file")->required();

  // ---- transform ----
  auto* transform = app.add_subcommand("transform", "apply a transform to a signal");
  std::string tr_abbrev, tr_kernel, tr_out, tr_strategy = "rec2", tr_precision = "double";
  std::string tr_coeffs;
  double tr_sigma = 16.0, tr_xi = 10.0;
  std::optional<int> tr_k;
  std::optional<double> tr_beta;
  std::optional<int> tr_ps;
  int tr_p = 4, tr_pd = 6, tr_n0 = 0, tr_workers = 1;
  bool tr_tune = false, tr_oracle = false;
  SignalCliArgs tr_signal;
  transform->add_option("--abbrev", tr_abbrev, "filter abbreviation (GDP6, MDS5P7, MMP3, GCT3...)");
  transform->add_option("--kernel", tr_kernel,
                        "gauss, gauss-d, gauss-dd, morlet or morlet-multiply");
  transform->add_option("--sigma", tr_sigma, "kernel scale");
  transform->add_option("--xi", tr_xi, "Morlet center frequency");
  transform->add_option("--K", tr_k, "window half-width");
  transform->add_option("--P", tr_p, "max order / P_M");
  transform->add_option("--PD", tr_pd, "direct-method order count");
  transform->add_option("--PS", tr_ps, "direct-method start order");
  transform->add_option("--n0", tr_n0, "ASFT shift");
  transform->add_flag("--tune-beta", tr_tune, "tune beta");
  transform->add_option("--beta", tr_beta, "fix beta");
  transform->add_option("--strategy", tr_strategy, "kernel, rec1 or rec2");
  transform->add_option("--precision", tr_precision, "single or double");
  transform->add_option("--workers", tr_workers, "worker threads");
  transform->add_flag("--oracle", tr_oracle, "also write the truncated-convolution reference");
  transform->add_option("--coeffs", tr_coeffs, "load coefficients instead of refitting");
  transform->add_option("--output", tr_out, "output CSV")->required();
  tr_signal.attach(transform);

  // ---- rmse-table ----
  auto* table = app.add_subcommand("rmse-table", "Gaussian smoothing accuracy table");
  int tab_k = 256, tab_n0 = 10;
  std::string tab_csv;
  table->add_option("--K", tab_k, "window half-width");
  table->add_option("--n0", tab_n0, "ASFT shift");
  table->add_option("--csv", tab_csv, "also write CSV");

  // ---- morlet-sweep ----
  auto* sweep = app.add_subcommand("morlet-sweep", "Morlet kernel accuracy versus xi");
  double sw_sigma = 60.0, sw_xi_min = 1.0, sw_xi_max = 20.0, sw_xi_step = 1.0;
  std::string sw_method = "both", sw_csv;
  int sw_pd = 6, sw_pm = 3, sw_n0 = 0;
  sweep->add_option("--sigma", sw_sigma, "Morlet scale");
  sweep->add_option("--xi-min", sw_xi_min, "first xi");
  sweep->add_option("--xi-max", sw_xi_max, "last xi");
  sweep->add_option("--xi-step", sw_xi_step, "xi step");
  sweep->add_option("--method", sw_method, "direct, multiply or both");
  sweep->add_option("--PD", sw_pd, "direct order count");
  sweep->add_option("--PM", sw_pm, "multiply max order");
  sweep->add_option("--n0", sw_n0, "ASFT shift");
  sweep->add_option("--csv", sw_csv, "also write CSV");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "time SFT smoothing against truncated convolution");
  std::string bm_mode = "sigma-sweep", bm_precision = "double", bm_csv;
  std::int64_t bm_n = 102400;
  double bm_sigma = 8192.0;
  int bm_reps = 5, bm_warm = 2, bm_workers = 1;
  bench->add_option("--mode", bm_mode, "n-sweep (sigma fixed) or sigma-sweep (N fixed)");
  bench->add_option("--N", bm_n, "largest N (n-sweep) or fixed N (sigma-sweep)");
  bench->add_option("--sigma", bm_sigma, "fixed sigma (n-sweep) or largest sigma (sigma-sweep)");
  bench->add_option("--reps", bm_reps, "repetitions (>= 3)");
  bench->add_option("--warmups", bm_warm, "discarded warmup runs");
  bench->add_option("--workers", bm_workers, "worker threads");
  bench->add_option("--precision", bm_precision, "single or double");
  bench->add_option("--csv", bm_csv, "also write CSV");

  // ---- sliding-sum-trace ----
  auto* ss = app.add_subcommand("sliding-sum-trace", "round-by-round sliding-sum schedule");
  std::int64_t ss_n = 1024, ss_l = 137;
  std::string ss_variant = "flat", ss_csv;
  int ss_workers = 1;
  std::uint64_t ss_seed = 42;
  ss->add_option("--N", ss_n, "input length");
  ss->add_option("--L", ss_l, "window length");
  ss->add_option("--variant", ss_variant, "flat or blocked8");
  ss->add_option("--workers", ss_workers, "worker threads");
  ss->add_option("--seed", ss_seed, "signal seed");
  ss->add_option("--csv", ss_csv, "trace CSV path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fit->parsed()) {
      if (fit_auto_ps) fit_ps.reset();
      return cmd_fit(fit_kernel, fit_sigma, fit_xi, fit_k, fit_p, fit_pd, fit_ps, fit_n0,
                     fit_tune, fit_beta, fit_method, fit_out);
    }
    if (transform->parsed()) {
      TransformSpec spec =
          build_transform_spec(tr_abbrev, tr_kernel, tr_sigma, tr_xi, tr_k, tr_p, tr_pd, tr_ps,
                               tr_n0, tr_tune, tr_beta, tr_strategy, tr_precision);
      if (!tr_coeffs.empty()) substitute_coefficients(spec, tr_coeffs);
      return cmd_transform(spec, tr_signal.load(), tr_out, tr_oracle, tr_workers);
    }
    if (table->parsed()) return cmd_rmse_table(tab_k, tab_n0, tab_csv);
    if (sweep->parsed())
      return cmd_morlet_sweep(sw_sigma, sw_xi_min, sw_xi_max, sw_xi_step, sw_method, sw_pd,
                              sw_pm, sw_n0, sw_csv);
    if (bench->parsed())
      return cmd_bench(bm_mode, bm_n, bm_sigma, bm_reps, bm_warm, bm_workers, bm_precision,
                       bm_csv);
    if (ss->parsed())
      return cmd_sliding_sum_trace(ss_n, ss_l, ss_variant, ss_workers, ss_seed, ss_csv);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace sft
