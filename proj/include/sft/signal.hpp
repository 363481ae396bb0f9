#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace sft {

/// How sample reads outside [0, N-1] are resolved.
enum class BoundaryPolicy { Zero, Clamp };

/// Floating-point width used for engine state arithmetic end-to-end.
enum class Precision { Single, Double };

/// A finite real-valued sample sequence plus its boundary-extension rule.
/// Immutable after construction; safe to share across threads.
struct Signal {
  Eigen::ArrayXd samples;
  BoundaryPolicy boundary = BoundaryPolicy::Clamp;

  Signal() = default;

  Signal(Eigen::ArrayXd s, BoundaryPolicy b = BoundaryPolicy::Clamp)
      : samples(std::move(s)), boundary(b) {
    if (samples.size() < 1) throw std::invalid_argument("Signal: need at least one sample");
    if (!samples.isFinite().all()) throw std::invalid_argument("Signal: samples must be finite");
  }

  std::int64_t size() const { return samples.size(); }
};

/// Boundary-resolved sample read; any signed index is valid.
inline double extended_sample(const Signal& sig, std::int64_t n) {
  const std::int64_t size = sig.samples.size();
  if (n >= 0 && n < size) return sig.samples[n];
  switch (sig.boundary) {
    case BoundaryPolicy::Zero:
      return 0.0;
    case BoundaryPolicy::Clamp:
      return n < 0 ? sig.samples[0] : sig.samples[size - 1];
  }
  return 0.0;
}

enum class TestSignalKind { Impulse, Constant, Chirp, SeededNoise };

/// Deterministic generators: same (kind, n, seed) always yields identical samples.
/// Chirp is sin(2*pi*F*n^2/N^2) with F fixed below; SeededNoise is uniform in [-1, 1]
/// drawn from a splitmix64 stream so the bits do not depend on the C++ library.
Signal make_test_signal(TestSignalKind kind, std::int64_t n, std::uint64_t seed,
                        BoundaryPolicy boundary = BoundaryPolicy::Clamp);

}  // namespace sft
