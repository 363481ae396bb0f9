#include "sft/engine.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "sft/sliding_sum.hpp"

namespace sft {
namespace {

// Ring buffer over filter positions; capacity covers the largest lag (2K+1).
template <typename T>
class LagRing {
 public:
  LagRing(std::int64_t first_pos, std::int64_t capacity)
      : first_(first_pos), data_(static_cast<std::size_t>(capacity), T{}) {}

  void push(std::int64_t pos, T value) { data_[index(pos)] = value; }

  // Value at an absolute position; positions before the warm start read as 0.
  T at(std::int64_t pos) const { return pos < first_ ? T{} : data_[index(pos)]; }

 private:
  std::size_t index(std::int64_t pos) const {
    return static_cast<std::size_t>((pos - first_) % static_cast<std::int64_t>(data_.size()));
  }

  std::int64_t first_;
  std::vector<T> data_;
};

template <typename Scalar>
struct ComponentSink {
  Eigen::ArrayXd& c;
  Eigen::ArrayXd& s;
  std::int64_t lo;

  // result = c - i s (the windowed sum carries e^{-i omega m} on the lag-m
  // sample), so s is the negated imaginary part.
  void store(std::int64_t n, std::complex<Scalar> value) {
    c[n - lo] = static_cast<double>(value.real());
    s[n - lo] = -static_cast<double>(value.imag());
  }
};

// First/second-order recursive filters with the window truncation. The filter
// runs from zero state at lo - K - (2K+1); the truncation difference cancels
// the start-dependent tail exactly, so the first emitted output already has a
// full window. Truncation factors are the general complex powers of
// z = e^{-alpha - i omega}: they reduce to the simple (-1)^p e^{+/-alpha K}
// constants when omega = pi p / K but stay valid for tuned beta.
template <typename Scalar>
void recursive_components(const Signal& sig, const SftConfig& cfg, std::int64_t lo,
                          std::int64_t hi, Eigen::ArrayXd& c, Eigen::ArrayXd& s,
                          double* max_state) {
  using Cx = std::complex<Scalar>;
  const int k = cfg.half_width;
  const double omega = cfg.order.angular(cfg.beta);
  const double decay = std::exp(-cfg.alpha);

  const Cx z(static_cast<Scalar>(decay * std::cos(omega)),
             static_cast<Scalar>(-decay * std::sin(omega)));
  const Scalar two_cos = static_cast<Scalar>(2.0 * decay * std::cos(omega));
  const Scalar decay_sq = static_cast<Scalar>(decay * decay);
  const Cx z_conj(z.real(), -z.imag());

  auto z_power = [&](double count) {  // z^count computed in double
    const double mod = std::exp(-cfg.alpha * count);
    return Cx(static_cast<Scalar>(mod * std::cos(omega * count)),
              static_cast<Scalar>(-mod * std::sin(omega * count)));
  };
  const Cx z_2k = z_power(2.0 * k);
  const Cx z_2k1 = z_power(2.0 * k + 1.0);
  const Cx unwind = [&] {  // z^{-K}
    const double mod = std::exp(cfg.alpha * k);
    return Cx(static_cast<Scalar>(mod * std::cos(omega * k)),
              static_cast<Scalar>(mod * std::sin(omega * k)));
  }();

  const std::int64_t warm = lo - k - (2 * k + 1);
  LagRing<Cx> ring(warm, 2 * k + 2);
  ComponentSink<Scalar> sink{c, s, lo};

  // Both orders filter the same input restricted to positions >= warm (the
  // x[warm-1] feed of the second-order form is zero), so they generate the
  // same v sequence up to rounding.
  Scalar prev_x = Scalar(0);
  Cx v1{}, v2{};
  double peak_state = 0.0;
  for (std::int64_t m = warm; m <= hi + k; ++m) {
    const Scalar xm = static_cast<Scalar>(extended_sample(sig, m));
    Cx v;
    if (cfg.strategy == Strategy::Recursive1) {
      v = Cx(z.real() * v1.real() - z.imag() * v1.imag() + xm,
             z.real() * v1.imag() + z.imag() * v1.real());
    } else {
      v = Cx(two_cos * v1.real() - decay_sq * v2.real() + xm - z_conj.real() * prev_x,
             two_cos * v1.imag() - decay_sq * v2.imag() - z_conj.imag() * prev_x);
    }
    v2 = v1;
    v1 = v;
    prev_x = xm;
    ring.push(m, v);
    if (max_state) peak_state = std::max(peak_state, static_cast<double>(std::abs(v)));

    if (m >= lo + k) {
      const std::int64_t n = m - k;
      Cx window;
      if (cfg.window_2k1) {
        window = v - z_2k1 * ring.at(m - 2 * k - 1);
      } else {
        window = v - z_2k * ring.at(m - 2 * k) +
                 z_2k * static_cast<Scalar>(extended_sample(sig, n - k));
      }
      sink.store(n, unwind * window);
    }
  }
  if (max_state) *max_state = peak_state;
}

template <typename Scalar>
std::complex<Scalar> phased_sample(const Signal& sig, double omega, std::int64_t j) {
  const double xj = extended_sample(sig, j);
  return {static_cast<Scalar>(xj * std::cos(omega * static_cast<double>(j))),
          static_cast<Scalar>(xj * std::sin(omega * static_cast<double>(j)))};
}

template <typename Scalar>
std::complex<Scalar> remove_phase(double omega, std::int64_t n, std::complex<Scalar> w) {
  const Scalar cn = static_cast<Scalar>(std::cos(omega * static_cast<double>(n)));
  const Scalar sn = static_cast<Scalar>(std::sin(omega * static_cast<double>(n)));
  return {w.real() * cn + w.imag() * sn, w.imag() * cn - w.real() * sn};
}

template <typename Scalar>
void kernel_integral_components(const Signal& sig, const SftConfig& cfg, std::int64_t lo,
                                std::int64_t hi, Eigen::ArrayXd& c, Eigen::ArrayXd& s,
                                double* max_state) {
  using Cx = std::complex<Scalar>;
  const int k = cfg.half_width;
  const double omega = cfg.order.angular(cfg.beta);
  ComponentSink<Scalar> sink{c, s, lo};
  double peak_state = 0.0;

  if (cfg.alpha == 0.0) {
    // u[m] = u[m-1] + x[m] e^{i omega m}; window by prefix difference.
    const std::int64_t warm = lo - k - 1;
    LagRing<Cx> ring(warm, 2 * k + 2);
    Cx prefix{};
    for (std::int64_t m = warm; m <= hi + k; ++m) {
      prefix += phased_sample<Scalar>(sig, omega, m);
      ring.push(m, prefix);
      if (max_state) peak_state = std::max(peak_state, static_cast<double>(std::abs(prefix)));
      if (m >= lo + k) {
        const std::int64_t n = m - k;
        const Cx window = prefix - ring.at(m - 2 * k - 1);
        sink.store(n, remove_phase<Scalar>(omega, n, window));
      }
    }
  } else {
    // In-window attenuated recurrence; the state is the window value itself,
    // initialized with an explicit window sum so it is exact from the start.
    const Scalar decay = static_cast<Scalar>(std::exp(-cfg.alpha));
    const Scalar leave = static_cast<Scalar>(std::exp(-(2.0 * k + 1.0) * cfg.alpha));
    const Scalar gain = static_cast<Scalar>(std::exp(cfg.alpha * k));
    const std::int64_t start = lo + k;
    Cx window{};
    for (int lag = 2 * k; lag >= 0; --lag)
      window = decay * window + phased_sample<Scalar>(sig, omega, start - lag);
    for (std::int64_t m = start; m <= hi + k; ++m) {
      if (m > start)
        window = decay * window + phased_sample<Scalar>(sig, omega, m) -
                 leave * phased_sample<Scalar>(sig, omega, m - 2 * k - 1);
      if (max_state) peak_state = std::max(peak_state, static_cast<double>(std::abs(window)));
      const std::int64_t n = m - k;
      sink.store(n, gain * remove_phase<Scalar>(omega, n, window));
    }
  }
  if (max_state) *max_state = peak_state;
}

template <typename Scalar>
void sliding_sum_components(const Signal& sig, const SftConfig& cfg, std::int64_t lo,
                            std::int64_t hi, Eigen::ArrayXd& c, Eigen::ArrayXd& s, int workers,
                            double* max_state) {
  using Cx = std::complex<Scalar>;
  const int k = cfg.half_width;
  const double omega = cfg.order.angular(cfg.beta);
  const std::int64_t count = hi - lo + 1;
  const std::int64_t len = count + 2 * k;
  const double center = 0.5 * static_cast<double>(lo + hi);
  if (cfg.alpha * (0.5 * static_cast<double>(count) + k) > 600.0)
    throw std::invalid_argument(
        "sft_via_sliding_sum: alpha * N / 2 too large for the attenuated phased sequence");

  Eigen::ArrayX<Cx> phased(len);
  for (std::int64_t i = 0; i < len; ++i) {
    const std::int64_t j = lo - k + i;
    const double weight =
        cfg.alpha == 0.0 ? 1.0 : std::exp(cfg.alpha * (static_cast<double>(j) - center));
    const double xj = extended_sample(sig, j) * weight;
    phased[i] = Cx(static_cast<Scalar>(xj * std::cos(omega * static_cast<double>(j))),
                   static_cast<Scalar>(xj * std::sin(omega * static_cast<double>(j))));
  }
  const Eigen::ArrayX<Cx> sums =
      sliding_sum_flat<Cx>(phased, 2 * static_cast<std::int64_t>(k) + 1, workers);

  double peak_state = 0.0;
  ComponentSink<Scalar> sink{c, s, lo};
  for (std::int64_t n = lo; n <= hi; ++n) {
    const Cx w = sums[n - lo];
    if (max_state) peak_state = std::max(peak_state, static_cast<double>(std::abs(w)));
    const double scale =
        cfg.alpha == 0.0 ? 1.0 : std::exp(-cfg.alpha * (static_cast<double>(n) - center));
    sink.store(n, static_cast<Scalar>(scale) * remove_phase<Scalar>(omega, n, w));
  }
  if (max_state) *max_state = peak_state;
}

template <typename Scalar>
ComponentSeq dispatch_components(const Signal& sig, const SftConfig& cfg, std::int64_t lo,
                                 std::int64_t hi, double* max_state) {
  ComponentSeq out;
  out.c.resize(hi - lo + 1);
  out.s.resize(hi - lo + 1);
  switch (cfg.strategy) {
    case Strategy::Recursive1:
    case Strategy::Recursive2:
      recursive_components<Scalar>(sig, cfg, lo, hi, out.c, out.s, max_state);
      break;
    case Strategy::KernelIntegral:
      // Float prefix sums drift with n; the per-window summation trees do not,
      // matching how this strategy is deployed in parallel form.
      if (cfg.precision == Precision::Single && cfg.alpha == 0.0)
        sliding_sum_components<Scalar>(sig, cfg, lo, hi, out.c, out.s, 1, max_state);
      else
        kernel_integral_components<Scalar>(sig, cfg, lo, hi, out.c, out.s, max_state);
      break;
  }
  return out;
}

ComponentSeq run_components(const Signal& sig, const SftConfig& cfg, std::int64_t lo,
                            std::int64_t hi, double* max_state = nullptr) {
  cfg.validate();
  if (lo > hi) throw std::invalid_argument("components_over: empty range");
  if (cfg.precision == Precision::Single)
    return dispatch_components<float>(sig, cfg, lo, hi, max_state);
  return dispatch_components<double>(sig, cfg, lo, hi, max_state);
}

}  // namespace

ComponentSeq components_over(const Signal& sig, const SftConfig& cfg, std::int64_t lo,
                             std::int64_t hi) {
  return run_components(sig, cfg, lo, hi);
}

ComponentSeq sft_components(const Signal& sig, const SftConfig& cfg) {
  if (cfg.alpha != 0.0)
    throw std::invalid_argument("sft_components: alpha must be 0 (use asft_components)");
  return run_components(sig, cfg, 0, sig.size() - 1);
}

ComponentSeq asft_components(const Signal& sig, const SftConfig& cfg) {
  if (!(cfg.alpha > 0.0)) throw std::invalid_argument("asft_components: alpha must be > 0");
  return run_components(sig, cfg, 0, sig.size() - 1);
}

WindowState sliding_window_state(const Signal& sig, const SftConfig& cfg) {
  cfg.validate();
  if (cfg.alpha != 0.0) throw std::invalid_argument("sliding_window_state: plain SFT only");
  const int k = cfg.half_width;
  const double omega = cfg.order.angular(cfg.beta);
  const std::int64_t size = sig.size();
  WindowState state;
  state.via_prefix.resize(size);
  state.via_recurrence.resize(size);

  // Prefix route (difference of running sums) next to the direct in-window
  // recurrence, both emitting u_{(2K+1)}[n + K].
  const std::int64_t warm = -1;  // prefix accumulates from n = -K on
  LagRing<std::complex<double>> ring(warm - k, 2 * k + 2);
  std::complex<double> prefix{};
  std::complex<double> window{};
  for (int lag = 2 * k; lag >= 0; --lag)
    window += phased_sample<double>(sig, omega, k - lag);
  for (std::int64_t m = -k - 1; m <= size - 1 + k; ++m) {
    prefix += phased_sample<double>(sig, omega, m);
    ring.push(m, prefix);
    if (m >= k) {
      const std::int64_t n = m - k;
      if (m > k)
        window += phased_sample<double>(sig, omega, m) -
                  phased_sample<double>(sig, omega, m - 2 * k - 1);
      state.via_prefix[n] = prefix - ring.at(m - 2 * k - 1);
      state.via_recurrence[n] = window;
    }
  }
  return state;
}

StabilityReport stability_probe(const Signal& sig, const SftConfig& cfg) {
  SftConfig single_cfg = cfg;
  single_cfg.precision = Precision::Single;
  SftConfig double_cfg = cfg;
  double_cfg.precision = Precision::Double;

  StabilityReport report;
  const ComponentSeq lo =
      run_components(sig, single_cfg, 0, sig.size() - 1, &report.max_state_magnitude);
  const ComponentSeq ref = run_components(sig, double_cfg, 0, sig.size() - 1);

  report.abs_error = ((lo.c - ref.c).abs()).max((lo.s - ref.s).abs());
  report.reference_scale = std::max(ref.c.abs().maxCoeff(), ref.s.abs().maxCoeff());
  report.max_component_error = report.reference_scale > 0.0
                                   ? report.abs_error.maxCoeff() / report.reference_scale
                                   : report.abs_error.maxCoeff();
  return report;
}

ComponentSeq sft_via_sliding_sum(const Signal& sig, const SftConfig& cfg, int workers) {
  SftConfig checked = cfg;
  checked.strategy = Strategy::KernelIntegral;
  checked.validate();
  ComponentSeq out;
  out.c.resize(sig.size());
  out.s.resize(sig.size());
  if (checked.precision == Precision::Single)
    sliding_sum_components<float>(sig, checked, 0, sig.size() - 1, out.c, out.s, workers,
                                  nullptr);
  else
    sliding_sum_components<double>(sig, checked, 0, sig.size() - 1, out.c, out.s, workers,
                                   nullptr);
  return out;
}

}  // namespace sft
